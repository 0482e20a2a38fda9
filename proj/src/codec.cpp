#include "tps/codec.hpp"

#include <algorithm>
#include <deque>

#include "tps/closure.hpp"
#include "tps/error.hpp"
#include "tps/lattice.hpp"
#include "tps/ps.hpp"
#include "tps/schnyder.hpp"

namespace tps {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("codec", msg); }
[[noreturn]] void invalid() { fail("invalid word"); }

// Bits needed for values 0..count-1.
int width_for(long count) {
    int w = 0;
    while (count > 1 && (1L << w) < count) ++w;
    return w;
}

class BitWriter {
public:
    explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}
    void put(bool bit) {
        if (used_ == 0) out_.push_back(0);
        if (bit) out_.back() |= static_cast<uint8_t>(0x80u >> used_);
        used_ = (used_ + 1) & 7;
    }
    void put(unsigned long value, int width) {
        for (int i = width - 1; i >= 0; --i) put((value >> i) & 1u);
    }

private:
    std::vector<uint8_t>& out_;
    int used_ = 0;
};

class BitReader {
public:
    BitReader(const std::vector<uint8_t>& in, size_t byte) : in_(in), pos_(byte * 8) {}
    bool get() {
        if (pos_ >= in_.size() * 8) invalid();
        const bool b = (in_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
        ++pos_;
        return b;
    }
    unsigned long get(int width) {
        unsigned long v = 0;
        for (int i = 0; i < width; ++i) v = (v << 1) | get();
        return v;
    }
    size_t position() const { return pos_; }

private:
    const std::vector<uint8_t>& in_;
    size_t pos_;
};

mpz_class range_product(unsigned long lo, unsigned long hi) {
    if (lo > hi) return 1;
    if (hi - lo < 16) {
        mpz_class r = lo;
        for (unsigned long x = lo + 1; x <= hi; ++x) r *= x;
        return r;
    }
    const unsigned long mid = lo + (hi - lo) / 2;
    return range_product(lo, mid) * range_product(mid + 1, hi);
}

// Binary splitting of sum_j prod_{i<=j} P_i/Q_i as T/Q over j in [l, r).
struct Series {
    mpz_class p, q, t;
};

Series split(const std::vector<unsigned long>& pos, size_t l, size_t r) {
    if (r - l == 1) {
        // C(b, j+1) / C(a, j) = (a+1)...b / ((j+1) (a-j+1)...(b-j-1))
        const unsigned long j = l, a = pos[l - 1], b = pos[l];
        Series s;
        s.p = range_product(a + 1, b);
        s.q = range_product(a - j + 1, b - j - 1) * (j + 1);
        s.t = s.p;
        return s;
    }
    const size_t mid = l + (r - l) / 2;
    Series x = split(pos, l, mid);
    Series y = split(pos, mid, r);
    Series s;
    s.t = x.t * y.q + x.p * y.t;
    s.p = x.p * y.p;
    s.q = x.q * y.q;
    return s;
}

}  // namespace

CutResult cut_special_edges(const StemMap& u) {
    if (u.root < 0 || u.face_count() != 1) fail("not unicellular");
    if (!u.is_stem(u.root)) fail("root stem absent");
    const std::vector<int8_t> out = orient_from_root(u);
    const int v0 = u.vert[u.root];
    const std::vector<int> first = u.vertex_halves();
    std::vector<char> reached(u.n, 0), tree_half(u.halves(), 0);
    std::deque<int> q{v0};
    reached[v0] = 1;
    int count = 1;
    while (!q.empty()) {
        const int w = q.front();
        q.pop_front();
        int x = first[w];
        do {
            if (!u.is_stem(x) && !out[x]) {
                const int t = u.mate[x];
                const int y = u.vert[t];
                if (!reached[y]) {
                    reached[y] = 1;
                    ++count;
                    tree_half[x] = tree_half[t] = 1;
                    q.push_back(y);
                }
            }
            x = u.next[x];
        } while (x != first[w]);
    }
    if (count != u.n) fail("no spanning tree toward root");
    std::vector<int> tails;
    for (int h = 0; h < u.halves(); ++h)
        if (!u.is_stem(h) && out[h] && !tree_half[h]) tails.push_back(h);
    if (tails.size() != 2) fail("not unicellular");

    StemMap w = u;
    std::vector<char> live(u.halves(), 1), head(u.halves(), 0);
    for (int t : tails) head[u.mate[t]] = 1;
    struct Pending {
        int tail, anchor, order;
    };
    std::vector<Pending> pend;
    for (int t : tails) {
        const int hd = u.mate[t];
        int p = u.prev[hd];
        while (head[p]) p = u.prev[p];
        // heads sharing the corner, counted ccw from its anchor
        int order = 0;
        for (int x = u.next[p]; x != hd; x = u.next[x]) order += head[x];
        pend.push_back({t, p, order});
    }
    for (int t : tails) {
        const int hd = u.mate[t];
        w.mate[t] = -1;
        w.detach(hd);
        live[hd] = 0;
    }
    std::vector<int> id(u.halves(), -1);
    for (int h = 0, k = 0; h < u.halves(); ++h)
        if (live[h]) id[h] = k++;
    const StemMap full = w.compacted(live);
    const std::vector<int> walk = full.face_walk();
    if (static_cast<int>(walk.size()) != 4 * u.n - 1) fail("not unicellular");
    std::vector<int> step(full.halves(), -1), stem_pos(full.halves(), -1);
    int stems = 0;
    for (size_t i = 0; i < walk.size(); ++i) {
        step[walk[i]] = static_cast<int>(i);
        if (full.is_stem(walk[i])) stem_pos[walk[i]] = stems++;
    }
    CutResult r;
    std::array<std::pair<std::pair<int, int>, SpecialRecord>, 2> recs;
    for (int i = 0; i < 2; ++i) {
        SpecialRecord s{stem_pos[id[pend[i].tail]], step[id[pend[i].anchor]]};
        recs[i] = {{s.angle_index, pend[i].order}, s};
    }
    std::sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int i = 0; i < 2; ++i) r.special[i] = recs[i].second;
    r.tree = strip_root_stem(full);
    return r;
}

StemMap reattach_special_edges(const StemMap& tree, const std::array<SpecialRecord, 2>& special) {
    if (tree.root < 0) invalid();
    StemMap t = tree;
    const int s0 = t.add_half(t.vert[t.root]);
    t.insert_before(t.root, s0);
    t.root = s0;
    const std::vector<int> walk = t.face_walk();
    if (static_cast<int>(walk.size()) != 4 * t.n - 1) invalid();
    std::vector<int> stems;
    for (int x : walk)
        if (t.is_stem(x)) stems.push_back(x);
    if (special[0].stem_index == special[1].stem_index) invalid();
    int last_head = -1;
    for (int i = 0; i < 2; ++i) {
        const SpecialRecord& r = special[i];
        if (r.stem_index < 0 || r.stem_index >= static_cast<int>(stems.size())) invalid();
        if (r.angle_index < 0 || r.angle_index >= static_cast<int>(walk.size())) invalid();
        const int s = stems[r.stem_index];
        if (s == s0) invalid();
        const int anchor = (i == 1 && r.angle_index == special[0].angle_index) ? last_head : walk[r.angle_index];
        const int hd = t.add_half(t.vert[anchor]);
        t.insert_after(anchor, hd);
        t.mate[hd] = s;
        t.mate[s] = hd;
        last_head = hd;
    }
    return t;
}

std::string tree_to_bits(const StemMap& tree) {
    std::string bits;
    const std::vector<int> walk = tree.face_walk();
    std::vector<char> seen(tree.halves(), 0);
    bits.reserve(walk.size());
    for (int x : walk) {
        if (tree.is_stem(x) || seen[x]) {
            bits.push_back('0');
        } else {
            seen[x] = seen[tree.mate[x]] = 1;
            bits.push_back('1');
        }
    }
    return bits;
}

StemMap bits_to_tree(const std::string& word) {
    const long len = static_cast<long>(word.size());
    if (len < 2 || len % 4 != 2) invalid();
    const int n = static_cast<int>((len + 2) / 4);
    if (std::count(word.begin(), word.end(), '1') != n - 1) invalid();
    StemMap t;
    t.n = n;
    std::vector<std::vector<int>> dep(n);
    std::vector<int> stems(n, 0), up;  // up: half leading to the parent
    int v = 0, next_vertex = 1;
    for (char c : word) {
        if (c == '1') {
            if (next_vertex >= n) invalid();
            const int w = next_vertex++;
            const int a = t.add_half(v), b = t.add_half(w);
            t.mate[a] = b;
            t.mate[b] = a;
            dep[v].push_back(a);
            up.push_back(b);
            v = w;
        } else if (c == '0') {
            if (stems[v] < 2) {
                ++stems[v];
                dep[v].push_back(t.add_half(v));
            } else {
                if (up.empty()) invalid();
                const int b = up.back();
                up.pop_back();
                dep[v].push_back(b);
                v = t.vert[t.mate[b]];
            }
        } else {
            invalid();
        }
    }
    if (v != 0 || !up.empty() || next_vertex != n) invalid();
    for (int x = 0; x < n; ++x)
        if (stems[x] != 2) invalid();
    // successive departures turn clockwise around their vertex
    for (int x = 0; x < n; ++x) {
        const auto& d = dep[x];
        const size_t k = d.size();
        for (size_t i = 0; i < k; ++i) {
            t.prev[d[i]] = d[(i + 1) % k];
            t.next[d[(i + 1) % k]] = d[i];
        }
    }
    t.root = dep[0].back();
    return t;
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class rank_word(const std::string& word) {
    std::vector<unsigned long> pos;
    for (size_t i = 0; i < word.size(); ++i)
        if (word[i] == '1') pos.push_back(i);
    const size_t k = pos.size();
    size_t s = 0;
    while (s < k && pos[s] == s) ++s;
    if (s == k) return 0;
    // blocks start from an exact binomial so the rational series inside a
    // block stays about as long as the result
    constexpr size_t kBlocks = 64;
    const size_t block = std::max<size_t>(64, (k - s + kBlocks - 1) / kBlocks);
    mpz_class total = 0;
    for (size_t l = s; l < k; l += block) {
        const size_t r = std::min(k, l + block);
        const mpz_class tl = binomial(pos[l], l + 1);
        if (r == l + 1) {
            total += tl;
            continue;
        }
        const Series sr = split(pos, l + 1, r);
        mpz_class part = tl * (sr.q + sr.t);
        mpz_divexact(part.get_mpz_t(), part.get_mpz_t(), sr.q.get_mpz_t());
        total += part;
    }
    return total;
}

std::string unrank_word(int length, int ones, const mpz_class& rank) {
    if (ones < 0 || ones > length || rank < 0) invalid();
    if (rank >= binomial(length, ones)) invalid();
    std::string word(length, '0');
    mpz_class r = rank;
    if (ones == 0) return word;
    // c = C(p, i+1) for the current candidate p of the i-th one
    long p = length - 1;
    mpz_class c = binomial(p, ones);
    for (long i = ones - 1; i >= 0; --i) {
        const unsigned long j = i + 1;
        while (c > r) {
            // C(p-1, j) = C(p, j) (p-j) / p
            c *= static_cast<unsigned long>(p - j);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
            --p;
        }
        if (c == 0) {
            if (r != 0) invalid();
            for (long x = i; x >= 0; --x) word[x] = '1';
            return word;
        }
        word[p] = '1';
        r -= c;
        if (i == 0) break;
        // C(p-1, i) = C(p, i+1) (i+1) / p
        c *= j;
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
        --p;
    }
    if (r != 0) invalid();
    return word;
}

int payload_bits(int n) {
    const mpz_class c = binomial(4L * n - 2, n - 1);
    if (c <= 1) return 0;
    const mpz_class top = c - 1;
    return static_cast<int>(mpz_sizeinbase(top.get_mpz_t(), 2));
}

std::vector<uint8_t> write_container(const CodeWord& w) {
    std::vector<uint8_t> out{'T', 'P', 'S', '1', 0x01};
    for (unsigned long v = w.n;;) {
        const uint8_t b = v & 0x7f;
        v >>= 7;
        if (v == 0) {
            out.push_back(b);
            break;
        }
        out.push_back(b | 0x80);
    }
    const int ws = width_for(2L * w.n + 1), wa = width_for(4L * w.n - 1);
    const int len = payload_bits(w.n);
    BitWriter bw(out);
    for (const auto& r : w.special) bw.put(r.stem_index, ws);
    for (const auto& r : w.special) bw.put(r.angle_index, wa);
    for (int i = len - 1; i >= 0; --i) bw.put(mpz_tstbit(w.rank.get_mpz_t(), i));
    return out;
}

CodeWord read_container(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 6 || bytes[0] != 'T' || bytes[1] != 'P' || bytes[2] != 'S' || bytes[3] != '1' ||
        bytes[4] != 0x01)
        invalid();
    CodeWord w;
    size_t at = 5;
    unsigned long n = 0;
    for (int shift = 0;; shift += 7) {
        if (at >= bytes.size() || shift > 28) invalid();
        const uint8_t b = bytes[at++];
        n |= static_cast<unsigned long>(b & 0x7f) << shift;
        if (!(b & 0x80)) break;
    }
    // a payload needs more than 3 bits per vertex
    if (n < 1 || n > (1ul << 28) || (bytes.size() - at) * 8 + 64 < 3 * n) invalid();
    w.n = static_cast<int>(n);
    const int ws = width_for(2L * w.n + 1), wa = width_for(4L * w.n - 1);
    const int len = payload_bits(w.n);
    const size_t total_bits = static_cast<size_t>(2 * ws + 2 * wa + len);
    if (bytes.size() - at != (total_bits + 7) / 8) invalid();
    BitReader br(bytes, at);
    for (auto& r : w.special) r.stem_index = static_cast<int>(br.get(ws));
    for (auto& r : w.special) r.angle_index = static_cast<int>(br.get(wa));
    for (const auto& r : w.special)
        if (r.stem_index >= 2 * w.n + 1 || r.angle_index >= 4 * w.n - 1) invalid();
    w.rank = 0;
    for (int i = len - 1; i >= 0; --i)
        if (br.get()) mpz_setbit(w.rank.get_mpz_t(), i);
    while (br.position() < bytes.size() * 8)
        if (br.get()) invalid();
    if (w.rank >= binomial(4L * w.n - 2, w.n - 1)) invalid();
    return w;
}

PsPipeline encode_to_unicellular(const TorusMap& g) {
    for (int f = 0; f < g.f(); ++f)
        if (g.face_size(f) != 3) fail("input is not a triangulation");
    const HomologyBasis basis = homology_basis(g);
    const Orientation d0 = initial_three_orientation(g);
    const Orientation htc = make_htc(g, d0, basis).first;
    const SchnyderColoring col = color_edges(g, htc);
    const Angle a0 = pick_root(g, htc, col);
    const Orientation dmin = minimize(g, htc, g.angle_face(a0.dart));
    if (!dmin.is_out(a0.dart)) throw Error("lattice_min", "internal error: root dart is not outgoing");
    PsOutput ps = run_ps(g, dmin, a0);
    const UnicellularCheck ck = check_unicellular(g, ps);
    if (!ck.ok) throw Error("ps_traversal", "output is not unicellular: " + ck.reason);
    return {std::move(ps.u), a0};
}

EncodeInfo encode_info(const TorusMap& input) {
    const TorusMap g = input.bfs_relabeled();
    const PsPipeline pipe = encode_to_unicellular(g);
    const CutResult cut = cut_special_edges(pipe.u);
    EncodeInfo info;
    info.n = g.n();
    info.word = tree_to_bits(cut.tree);
    CodeWord w{g.n(), cut.special, rank_word(info.word)};
    info.bytes = write_container(w);
    info.payload_bits = payload_bits(g.n());
    info.total_bits = static_cast<long>(info.bytes.size()) * 8;
    return info;
}

std::vector<uint8_t> encode(const TorusMap& g) { return encode_info(g).bytes; }

TorusMap decode(const std::vector<uint8_t>& bytes) {
    const CodeWord w = read_container(bytes);
    const std::string word = unrank_word(4 * w.n - 2, w.n - 1, w.rank);
    const StemMap tree = bits_to_tree(word);
    const StemMap u = reattach_special_edges(tree, w.special);
    return recover_rooted(u).map;
}

}  // namespace tps
