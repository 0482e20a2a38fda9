#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tps/stem_map.hpp"
#include "tps/torus_map.hpp"

namespace tps {

// One cut edge: its tail stays as a stem (index among the 2n+1 stems of the
// tree with the root stem, in face-walk order); its head was attached in the
// corner that precedes step angle_index of that walk (4n-1 steps).
struct SpecialRecord {
    int stem_index = 0;
    int angle_index = 0;
    bool operator==(const SpecialRecord&) const = default;
};

// Plane tree whose vertices each carry two stems; root is the half after the
// root corner.
struct CutResult {
    StemMap tree;
    std::array<SpecialRecord, 2> special;
};

CutResult cut_special_edges(const StemMap& u);
// Inverse of cut_special_edges.
StemMap reattach_special_edges(const StemMap& tree, const std::array<SpecialRecord, 2>& special);

// 1 for going down an edge, 0 for going up or passing a stem, walking the
// face from the root corner.
std::string tree_to_bits(const StemMap& tree);
StemMap bits_to_tree(const std::string& word);

mpz_class binomial(unsigned long n, unsigned long k);
// Colexicographic rank of the set of one positions: sum of C(p_i, i+1).
mpz_class rank_word(const std::string& word);
std::string unrank_word(int length, int ones, const mpz_class& r);
// Bits needed for a rank below C(4n-2, n-1).
int payload_bits(int n);

struct CodeWord {
    int n = 0;
    std::array<SpecialRecord, 2> special;
    mpz_class rank;
};

std::vector<uint8_t> write_container(const CodeWord& w);
CodeWord read_container(const std::vector<uint8_t>& bytes);

struct EncodeInfo {
    std::vector<uint8_t> bytes;
    int n = 0;
    int payload_bits = 0;
    long total_bits = 0;
    std::string word;
};

EncodeInfo encode_info(const TorusMap& g);
std::vector<uint8_t> encode(const TorusMap& g);
TorusMap decode(const std::vector<uint8_t>& bytes);

// The unicellular map the encoder builds for g (minimal HTC wood, root
// angle from the color-0 cycle).
struct PsPipeline {
    StemMap u;
    Angle root;
};
PsPipeline encode_to_unicellular(const TorusMap& g);

}  // namespace tps
