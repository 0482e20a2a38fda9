#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tps/closure.hpp"
#include "tps/codec.hpp"
#include "tps/error.hpp"
#include "tps/generators.hpp"
#include "tps/lattice.hpp"
#include "tps/oracle.hpp"
#include "tps/ps.hpp"
#include "tps/schnyder.hpp"

using namespace tps;
using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void io_fail(const std::string& msg) { throw Error("cli", msg); }

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data)) io_fail("cannot write " + path);
}

void report(const Json& j) { std::cout << j.dump() << '\n'; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TPS_THREADS")) {
        const int k = std::atoi(env);
        if (k >= 1) n = std::min(n, static_cast<unsigned>(k));
    }
    return static_cast<int>(n);
}

// Runs f(i) for i in [0, count) on up to thread_count() workers.
template <typename F>
void parallel_for(int count, F f) {
    const int workers = std::min(thread_count(), std::max(count, 1));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i; (i = next++) < count;) f(i);
        });
    for (auto& t : pool) t.join();
}

Json map_summary(const TorusMap& g) {
    return {{"n", g.n()}, {"m", g.m()}, {"f", g.f()}, {"triangulation", g.triangulation()}};
}

struct Wood {
    Orientation d;
    Angle root;
    int f0 = -1;
};

// Orientation the encoder uses: minimal HTC wood w.r.t. the root face.
Wood encoder_wood(const TorusMap& g) {
    const auto basis = homology_basis(g);
    const auto h = make_htc(g, initial_three_orientation(g), basis).first;
    const Angle a0 = pick_root(g, h, color_edges(g, h));
    const int f0 = g.angle_face(a0.dart);
    return {minimize(g, h, f0), a0, f0};
}

int cmd_gen(const std::string& kind, int n, uint64_t seed, const std::string& out) {
    TorusMap g;
    if (kind == "k7") {
        g = gen_k7();
    } else if (kind == "one-vertex") {
        g = gen_one_vertex();
    } else if (kind == "random") {
        if (n < 1) io_fail("--n must be at least 1");
        g = gen_random(n, seed);
    } else {
        std::cerr << "unknown generator '" << kind << "'\n";
        return 2;
    }
    write_output(out, format_map(g));
    if (!out.empty() && out != "-") {
        Json j{{"command", "gen"}, {"kind", kind}};
        j.update(map_summary(g));
        j["output"] = out;
        report(j);
    }
    return 0;
}

int cmd_encode(const std::string& in, const std::string& out) {
    const TorusMap g = parse_map(read_input(in));
    const auto t0 = std::chrono::steady_clock::now();
    const EncodeInfo info = encode_info(g);
    const double secs = seconds_since(t0);
    write_output(out, std::string(info.bytes.begin(), info.bytes.end()));
    if (!out.empty() && out != "-") {
        report({{"command", "encode"},
                {"n", info.n},
                {"payload_bits", info.payload_bits},
                {"total_bits", info.total_bits},
                {"bytes", info.bytes.size()},
                {"seconds", secs},
                {"output", out}});
    }
    return 0;
}

int cmd_decode(const std::string& in, const std::string& out) {
    const std::string data = read_input(in);
    const TorusMap g = decode(std::vector<uint8_t>(data.begin(), data.end()));
    write_output(out, format_map(g));
    if (!out.empty() && out != "-") {
        Json j{{"command", "decode"}};
        j.update(map_summary(g));
        j["output"] = out;
        report(j);
    }
    return 0;
}

int cmd_verify(const std::string& in, const std::string& iso) {
    const TorusMap g = parse_map(read_input(in));
    Json j{{"command", "verify"}, {"ok", true}};
    j.update(map_summary(g));
    if (g.triangulation()) j["separating_triangles"] = separating_triangles(g).size();
    if (!iso.empty()) {
        const bool same = is_isomorphic(g, parse_map(read_input(iso)));
        j["isomorphic"] = same;
        if (!same) j["ok"] = false;
    }
    report(j);
    return j["ok"].get<bool>() ? 0 : 1;
}

int cmd_analyze(const std::string& in, const std::string& orient_path, int f0, const std::string& save) {
    const TorusMap g = parse_map(read_input(in));
    const auto basis = homology_basis(g);
    Json j{{"command", "analyze"}};
    j.update(map_summary(g));
    Orientation d;
    if (orient_path.empty()) {
        const Wood w = encoder_wood(g);
        d = w.d;
        j["orientation"] = "encoder";
        j["f0"] = w.f0;
        j["root"] = {{"vertex", w.root.vertex}, {"dart", w.root.dart}};
    } else {
        d = parse_orientation(g, read_input(orient_path));
        j["orientation"] = orient_path;
    }
    if (f0 >= 0) {
        if (f0 >= g.f()) io_fail("--f0 out of range");
        j["f0"] = f0;
    }
    if (!save.empty()) write_output(save, format_orientation(d));
    j["three_orientation"] = is_three_orientation(g, d);
    j["gamma"] = {gamma(g, d, basis.b1), gamma(g, d, basis.b2)};
    j["htc"] = is_htc(g, d, basis);
    Json minimal = Json::array();
    for (int f = 0; f < g.f(); ++f)
        if (is_minimal(g, d, f)) minimal.push_back(f);
    j["minimal_faces"] = minimal;
    if (j.contains("f0")) j["minimal"] = is_minimal(g, d, j["f0"].get<int>());
    j["separating_triangles"] = separating_triangles(g).size();
    try {
        const auto c = color_edges(g, d);
        j["schnyder"] = true;
        j["crossing"] = is_crossing(g, d, c);
    } catch (const Error&) {
        j["schnyder"] = false;
        j["crossing"] = nullptr;
    }
    report(j);
    return 0;
}

int cmd_ps(const std::string& in, const std::string& out) {
    const TorusMap g = parse_map(read_input(in));
    const Wood w = encoder_wood(g);
    const PsOutput ps = run_ps(g, w.d, w.root);
    const UnicellularCheck ck = check_unicellular(g, ps);
    if (!ck.ok) throw Error("ps_traversal", "output is not unicellular: " + ck.reason);
    write_output(out, format_tuni(ps.u));
    if (!out.empty() && out != "-") {
        const ClassReport rep = validate_class(ps.u);
        report({{"command", "ps"},
                {"n", ps.u.n},
                {"edges", ps.u.edge_halves() / 2},
                {"stems", ps.u.stems()},
                {"angles", ps.angle_cycle.size()},
                {"in_u_r", rep.in_u_r},
                {"balanced", rep.balanced},
                {"gamma0", rep.gamma0},
                {"output", out}});
    }
    return 0;
}

Json roundtrip_one(const TorusMap& g) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto bytes = encode(g);
    const double enc = seconds_since(t0);
    const auto t1 = std::chrono::steady_clock::now();
    const TorusMap h = decode(bytes);
    const double dec = seconds_since(t1);
    return {{"n", g.n()},
            {"bytes", bytes.size()},
            {"isomorphic", is_isomorphic(g, h)},
            {"encode_seconds", enc},
            {"decode_seconds", dec}};
}

int cmd_roundtrip(const std::string& in, int count, uint64_t seed, int min_n, int max_n) {
    if (count <= 0) {
        Json j{{"command", "roundtrip"}};
        j.update(roundtrip_one(parse_map(read_input(in))));
        report(j);
        return j["isomorphic"].get<bool>() ? 0 : 1;
    }
    if (min_n < 1 || max_n < min_n) io_fail("need 1 <= --min-n <= --max-n");
    std::vector<Json> rows(count);
    parallel_for(count, [&](int i) {
        const uint64_t s = seed + static_cast<uint64_t>(i);
        const int n = min_n + static_cast<int>(s % static_cast<uint64_t>(max_n - min_n + 1));
        Json j{{"command", "roundtrip"}, {"seed", s}};
        try {
            j.update(roundtrip_one(gen_random(n, s)));
        } catch (const Error& e) {
            j["isomorphic"] = false;
            j["error"] = e.stage() + ": " + e.what();
        }
        rows[i] = std::move(j);
    });
    int bad = 0;
    for (auto& j : rows) {
        // timings are left out so that the output is reproducible
        j.erase("encode_seconds");
        j.erase("decode_seconds");
        bad += !j["isomorphic"].get<bool>();
        report(j);
    }
    report({{"command", "roundtrip"}, {"count", count}, {"failures", bad}});
    return bad == 0 ? 0 : 1;
}

int cmd_oracle(const std::string& in, int f0) {
    const TorusMap g = parse_map(read_input(in));
    if (f0 < 0 || f0 >= g.f()) io_fail("--f0 out of range");
    const auto basis = homology_basis(g);
    const auto orients = enumerate_three_orientations(g);
    const auto classes = homology_classes(g, orients);
    int htc_classes = 0;
    bool all_ok = true;
    for (size_t c = 0; c < classes.size(); ++c) {
        const auto& cls = classes[c];
        const LatticeReport rep = lattice_check(g, orients, cls, f0);
        int htc = 0;
        for (int i : cls) htc += is_htc(g, orients[i], basis);
        htc_classes += htc > 0;
        all_ok = all_ok && rep.ok() && (htc == 0 || htc == static_cast<int>(cls.size()));
        report({{"command", "oracle"},
                {"class", c},
                {"size", cls.size()},
                {"htc", htc > 0},
                {"gamma", {gamma(g, orients[cls[0]], basis.b1), gamma(g, orients[cls[0]], basis.b2)}},
                {"minimum", rep.minimum},
                {"rigid_edges", rigid_edges(g, orients, cls).size()},
                {"lattice_ok", rep.ok()},
                {"detail", format_lattice_report(rep)}});
    }
    all_ok = all_ok && htc_classes == 1;
    report({{"command", "oracle"},
            {"f0", f0},
            {"orientations", orients.size()},
            {"classes", classes.size()},
            {"htc_classes", htc_classes},
            {"ok", all_ok}});
    return all_ok ? 0 : 1;
}

int cmd_bench(int max_n, uint64_t seed, int runs) {
    if (max_n < 10) io_fail("--max-n must be at least 10");
    for (long n = 10; n <= max_n; n *= 10) {
        const TorusMap g = gen_random(static_cast<int>(n), seed);
        std::vector<double> enc, dec;
        EncodeInfo info;
        bool iso = true;
        for (int r = 0; r < runs; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            info = encode_info(g);
            enc.push_back(seconds_since(t0));
            t0 = std::chrono::steady_clock::now();
            const TorusMap h = decode(info.bytes);
            dec.push_back(seconds_since(t0));
            if (r == 0) iso = is_isomorphic(g, h);
        }
        std::sort(enc.begin(), enc.end());
        std::sort(dec.begin(), dec.end());
        report({{"command", "bench"},
                {"n", n},
                {"total_bits", info.total_bits},
                {"payload_bits", info.payload_bits},
                {"payload_bits_per_vertex", static_cast<double>(info.payload_bits) / static_cast<double>(n)},
                {"encode_median_seconds", enc[enc.size() / 2]},
                {"decode_median_seconds", dec[dec.size() / 2]},
                {"isomorphic", iso}});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toroidal triangulation codec"};
    app.require_subcommand(1);

    std::string kind, in, out, iso, orient, save;
    int n = 10, count = 0, min_n = 3, max_n = 50, f0 = 0, runs = 3;
    uint64_t seed = 1;

    auto* gen = app.add_subcommand("gen", "Write a triangulation (k7, one-vertex, random)");
    gen->add_option("kind", kind, "k7, one-vertex or random")->required();
    gen->add_option("--n", n, "Vertices for random");
    gen->add_option("--seed", seed, "Seed for random");
    gen->add_option("-o,--output", out, "Output file (default stdout)");

    auto* enc = app.add_subcommand("encode", "Encode a TMAP triangulation into a TPS1 container");
    enc->add_option("input", in, "Input TMAP (default stdin)");
    enc->add_option("-o,--output", out, "Output file (default stdout)");

    auto* dec = app.add_subcommand("decode", "Decode a TPS1 container into TMAP");
    dec->add_option("input", in, "Input TPS1 (default stdin)");
    dec->add_option("-o,--output", out, "Output file (default stdout)");

    auto* ver = app.add_subcommand("verify", "Check map invariants");
    ver->add_option("input", in, "Input TMAP (default stdin)");
    ver->add_option("--iso", iso, "Also check isomorphism with this TMAP");

    auto* ana = app.add_subcommand("analyze", "Report gamma, HTC, minimality and crossing status");
    ana->add_option("input", in, "Input TMAP")->required();
    ana->add_option("--orientation", orient, "torient sidecar (default: the encoder's wood)");
    ana->add_option("--f0", f0, "Face whose minimality is reported");
    ana->add_option("--save-orientation", save, "Write the analyzed orientation as torient");

    auto* ps = app.add_subcommand("ps", "Write the unicellular map of the encoder as TUNI");
    ps->add_option("input", in, "Input TMAP (default stdin)");
    ps->add_option("-o,--output", out, "Output file (default stdout)");

    auto* rt = app.add_subcommand("roundtrip", "Encode, decode and compare");
    rt->add_option("input", in, "Input TMAP (ignored with --count)");
    rt->add_option("--count", count, "Number of random triangulations instead of a file");
    rt->add_option("--seed", seed, "First seed for --count");
    rt->add_option("--min-n", min_n, "Smallest random size");
    rt->add_option("--max-n", max_n, "Largest random size");

    auto* ora = app.add_subcommand("oracle", "Exhaustive lattice check (at most 24 edges)");
    ora->add_option("input", in, "Input TMAP")->required();
    ora->add_option("--f0", f0, "Root face")->required();

    auto* ben = app.add_subcommand("bench", "Encode/decode timings for n = 10, 100, ...");
    ben->add_option("--max-n", max_n, "Largest n")->required();
    ben->add_option("--seed", seed, "Generator seed");
    ben->add_option("--runs", runs, "Runs per size (median reported)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) return cmd_gen(kind, n, seed, out);
        if (*enc) return cmd_encode(in, out);
        if (*dec) return cmd_decode(in, out);
        if (*ver) return cmd_verify(in, iso);
        if (*ana) return cmd_analyze(in, orient, ana->count("--f0") ? f0 : -1, save);
        if (*ps) return cmd_ps(in, out);
        if (*rt) return cmd_roundtrip(in, count, seed, min_n, max_n);
        if (*ora) return cmd_oracle(in, f0);
        if (*ben) return cmd_bench(max_n, seed, runs);
    } catch (const Error& e) {
        std::cerr << "stage: " << e.stage() << ", error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
