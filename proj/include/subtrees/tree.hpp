#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace subtrees {

// Labelled tree on the vertex set {1..n}. Adjacency lists are sorted.
struct LabelledTree {
    int n = 0;
    std::vector<std::vector<int>> adj;  // 1-indexed; adj[0] unused

    static LabelledTree from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    void check_vertex(int v) const;  // throws std::invalid_argument when out of range
    void validate() const;           // full invariant check (edge count, symmetry, connectivity)
};

// Sequence of length n-2 over {1..n}; the vertex count is implied by the length.
struct PruferCode {
    std::vector<int> code;
    int n() const { return static_cast<int>(code.size()) + 2; }
};

// Iterative smallest-label leaf removal; the recorded neighbours form the code.
PruferCode prufer_encode(const LabelledTree& tree);

// Linear-time pointer-scan decode (degree array + moving finger).
LabelledTree prufer_decode(const PruferCode& code);

// Uniform random tree: decode of n-2 i.i.d. uniform labels. Deterministic per seed.
LabelledTree random_tree(int n, std::uint64_t seed);

std::map<int, int> degree_histogram(const LabelledTree& tree);

// Non-increasing positive degrees; realizable as a tree iff the sum is 2(n-1).
struct DegreeSequence {
    std::vector<int> degrees;
    void validate() const;  // throws std::invalid_argument
};

// BFS-greedy realization: the root takes the largest degree, its children the
// next-largest left to right, and so on in BFS order; output labels 1..n are
// the BFS discovery order. Ties keep the input order (stable).
LabelledTree greedy_tree_from_degree_sequence(const DegreeSequence& pi);

// Text format: first line n, then n-1 lines "u v" with u < v, sorted.
LabelledTree read_tree(std::istream& in, const std::string& name = "<tree>");
void write_tree(const LabelledTree& tree, std::ostream& out);

bool same_edge_set(const LabelledTree& a, const LabelledTree& b);

}  // namespace subtrees
