#include "tps/stem_map.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "tps/error.hpp"

namespace tps {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("closure", msg); }

}  // namespace

int StemMap::add_half(int v, int orig_id) {
    const int h = halves();
    vert.push_back(v);
    next.push_back(h);
    prev.push_back(h);
    mate.push_back(-1);
    orig.push_back(orig_id);
    return h;
}

void StemMap::insert_after(int a, int h) {
    const int b = next[a];
    next[a] = h;
    prev[h] = a;
    next[h] = b;
    prev[b] = h;
    vert[h] = vert[a];
}

void StemMap::insert_before(int a, int h) { insert_after(prev[a], h); }

void StemMap::detach(int h) {
    next[prev[h]] = next[h];
    prev[next[h]] = prev[h];
    next[h] = prev[h] = h;
}

int StemMap::edge_halves() const {
    int c = 0;
    for (int h = 0; h < halves(); ++h) c += mate[h] >= 0;
    return c;
}

int StemMap::stems() const { return halves() - edge_halves(); }

std::vector<int> StemMap::vertex_halves() const {
    std::vector<int> out(n, -1);
    for (int h = 0; h < halves(); ++h)
        if (out[vert[h]] < 0) out[vert[h]] = h;
    return out;
}

std::vector<int> StemMap::stem_count() const {
    std::vector<int> out(n, 0);
    for (int h = 0; h < halves(); ++h)
        if (mate[h] < 0) ++out[vert[h]];
    return out;
}

std::vector<int> StemMap::face_walk() const {
    std::vector<int> w;
    if (root < 0) return w;
    const int x0 = walk_start();
    int x = x0;
    do {
        w.push_back(x);
        x = phi(x);
        if (static_cast<int>(w.size()) > halves()) break;
    } while (x != x0);
    return w;
}

int StemMap::face_count() const {
    std::vector<char> seen(halves(), 0);
    int faces = 0;
    for (int h = 0; h < halves(); ++h) {
        if (seen[h]) continue;
        ++faces;
        int x = h;
        while (!seen[x]) {
            seen[x] = 1;
            x = phi(x);
        }
    }
    return faces;
}

StemMap StemMap::compacted(const std::vector<char>& live) const {
    std::vector<int> id(halves(), -1);
    StemMap out;
    out.n = n;
    for (int h = 0; h < halves(); ++h)
        if (live[h]) id[h] = out.add_half(vert[h], orig[h]);
    for (int h = 0; h < halves(); ++h) {
        if (!live[h]) continue;
        out.next[id[h]] = id[next[h]];
        out.prev[id[h]] = id[prev[h]];
        out.mate[id[h]] = mate[h] < 0 ? -1 : id[mate[h]];
    }
    out.root = root < 0 ? -1 : id[root];
    return out;
}

std::string rooted_code(const StemMap& u) {
    std::ostringstream out;
    out << u.n << ':';
    if (u.root < 0) return out.str();
    std::vector<int> label(u.halves(), -1), order;
    std::deque<int> q{u.root};
    label[u.root] = 0;
    order.push_back(u.root);
    auto see = [&](int h) {
        if (h >= 0 && label[h] < 0) {
            label[h] = static_cast<int>(order.size());
            order.push_back(h);
            q.push_back(h);
        }
    };
    while (!q.empty()) {
        const int h = q.front();
        q.pop_front();
        see(u.next[h]);
        see(u.mate[h]);
    }
    for (int h : order) out << label[u.next[h]] << ',' << (u.mate[h] < 0 ? -1 : label[u.mate[h]]) << ';';
    return out.str();
}

bool same_rooted(const StemMap& a, const StemMap& b) { return rooted_code(a) == rooted_code(b); }

std::string format_tuni(const StemMap& u) {
    // skeleton darts numbered by edge in half order, stems numbered in order
    std::vector<int> name(u.halves(), -1);
    int edges = 0, stems = 0;
    for (int h = 0; h < u.halves(); ++h) {
        if (u.mate[h] < 0) {
            name[h] = stems++;
        } else if (name[h] < 0) {
            name[h] = 2 * edges;
            name[u.mate[h]] = 2 * edges + 1;
            ++edges;
        }
    }
    auto elem = [&](int h) { return u.mate[h] < 0 ? "s" + std::to_string(name[h]) : std::to_string(name[h]); };
    const std::vector<int> first = u.vertex_halves();
    std::ostringstream out;
    out << "tuni 1 " << u.n << '\n';
    for (int v = 0; v < u.n; ++v) {
        out << "v " << v;
        if (first[v] >= 0) {
            int h = first[v];
            do {
                if (u.mate[h] >= 0) out << ' ' << name[h];
                h = u.next[h];
            } while (h != first[v]);
        }
        out << '\n';
    }
    // stems in index order; each refers to its ccw predecessor, which is
    // either a dart or an earlier stem unless the vertex has only stems
    std::vector<int> stem_half(stems);
    for (int h = 0; h < u.halves(); ++h)
        if (u.mate[h] < 0) stem_half[name[h]] = h;
    std::vector<char> placed(u.halves(), 0);
    for (int h = 0; h < u.halves(); ++h) placed[h] = u.mate[h] >= 0;
    for (int k = 0; k < stems; ++k) {
        const int h = stem_half[k];
        int a = u.prev[h];
        while (a != h && !placed[a]) a = u.prev[a];
        out << "stem " << u.vert[h] << ' ' << (a == h ? std::string("-") : elem(a)) << '\n';
        placed[h] = 1;
    }
    if (u.root >= 0) out << "root " << u.vert[u.root] << ' ' << elem(u.root) << '\n';
    return out.str();
}

StemMap parse_tuni(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    StemMap u;
    int lineno = 0;
    auto bad = [&](const std::string& what) { fail("tuni line " + std::to_string(lineno) + ": " + what); };
    if (!std::getline(in, line)) fail("tuni: empty input");
    ++lineno;
    {
        std::istringstream hs(line);
        std::string magic, extra;
        int version = 0;
        if (!(hs >> magic >> version >> u.n) || magic != "tuni" || version != 1 || u.n < 1 || (hs >> extra))
            bad("bad header");
    }
    std::map<int, int> dart_half;
    std::vector<int> stem_half;
    std::vector<char> vertex_seen(u.n, 0);
    auto resolve = [&](const std::string& tok) -> int {
        if (tok.empty()) bad("missing element");
        if (tok[0] == 's') {
            size_t pos = 0;
            int k = -1;
            try {
                k = std::stoi(tok.substr(1), &pos);
            } catch (...) {
                bad("bad stem name " + tok);
            }
            if (pos + 1 != tok.size() || k < 0 || k >= static_cast<int>(stem_half.size())) bad("unknown stem " + tok);
            return stem_half[k];
        }
        size_t pos = 0;
        int d = -1;
        try {
            d = std::stoi(tok, &pos);
        } catch (...) {
            bad("bad dart " + tok);
        }
        auto it = dart_half.find(d);
        if (pos != tok.size() || it == dart_half.end()) bad("unknown dart " + tok);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        int v = -1;
        if (!(ls >> v) || v < 0 || v >= u.n) bad("bad vertex");
        if (kind == "v") {
            if (vertex_seen[v]) bad("vertex listed twice");
            vertex_seen[v] = 1;
            int d, first = -1, last = -1;
            while (ls >> d) {
                if (d < 0 || dart_half.count(d)) bad("bad or duplicate dart");
                const int h = u.add_half(v, d);
                dart_half[d] = h;
                if (first < 0) first = h;
                else u.insert_after(last, h);
                last = h;
            }
            if (!ls.eof()) bad("bad dart list");
        } else if (kind == "stem") {
            std::string after, extra;
            if (!(ls >> after) || (ls >> extra)) bad("stem needs one anchor");
            const int h = u.add_half(v);
            if (after != "-") {
                const int a = resolve(after);
                if (u.vert[a] != v) bad("anchor at another vertex");
                u.insert_after(a, h);
            } else {
                for (int x = 0; x < h; ++x)
                    if (u.vert[x] == v) bad("'-' anchor on a vertex with halves");
            }
            stem_half.push_back(h);
        } else if (kind == "root") {
            std::string before, extra;
            if (!(ls >> before) || (ls >> extra)) bad("root needs one element");
            u.root = resolve(before);
            if (u.vert[u.root] != v) bad("root element at another vertex");
        } else {
            bad("unknown record " + kind);
        }
    }
    for (const auto& [d, h] : dart_half) {
        auto it = dart_half.find(d ^ 1);
        if (it == dart_half.end()) fail("tuni: dart " + std::to_string(d) + " has no twin");
        u.mate[h] = it->second;
    }
    for (int h = 0; h < u.halves(); ++h) u.orig[h] = -1;
    return u;
}

}  // namespace tps
