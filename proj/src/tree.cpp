#include "subtrees/tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "subtrees/errors.hpp"
#include "subtrees/rng.hpp"

namespace subtrees {

LabelledTree LabelledTree::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw std::invalid_argument("tree: vertex count must be positive");
    if (static_cast<int>(edges.size()) != n - 1)
        throw std::invalid_argument("tree: expected " + std::to_string(n - 1) + " edges, got " +
                                    std::to_string(edges.size()));
    LabelledTree t;
    t.n = n;
    t.adj.assign(n + 1, {});
    for (auto [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("tree: edge label out of range");
        if (u == v) throw std::invalid_argument("tree: self-loop");
        t.adj[u].push_back(v);
        t.adj[v].push_back(u);
    }
    for (int v = 1; v <= n; ++v) std::sort(t.adj[v].begin(), t.adj[v].end());
    t.validate();
    return t;
}

void LabelledTree::check_vertex(int v) const {
    if (v < 1 || v > n)
        throw std::invalid_argument("vertex " + std::to_string(v) + " outside [1, " +
                                    std::to_string(n) + "]");
}

void LabelledTree::validate() const {
    if (n < 1) throw std::invalid_argument("tree: vertex count must be positive");
    if (static_cast<int>(adj.size()) != n + 1)
        throw std::invalid_argument("tree: adjacency size mismatch");
    long long half_edges = 0;
    for (int v = 1; v <= n; ++v) {
        const auto& a = adj[v];
        half_edges += static_cast<long long>(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            int w = a[i];
            if (w < 1 || w > n) throw std::invalid_argument("tree: neighbour label out of range");
            if (w == v) throw std::invalid_argument("tree: self-loop");
            if (i > 0 && a[i - 1] >= w)
                throw std::invalid_argument("tree: adjacency not sorted/duplicate edge");
            if (!std::binary_search(adj[w].begin(), adj[w].end(), v))
                throw std::invalid_argument("tree: adjacency not symmetric");
        }
    }
    if (half_edges != 2LL * (n - 1)) throw std::invalid_argument("tree: wrong edge count");
    // connectivity: n-1 symmetric edges + all reachable from 1 => tree
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != n) throw std::invalid_argument("tree: not connected");
}

PruferCode prufer_encode(const LabelledTree& tree) {
    if (tree.n < 2) throw std::invalid_argument("prufer_encode: need n >= 2");
    const int n = tree.n;
    std::vector<int> deg(n + 1);
    // nsum[v] = sum of still-present neighbour labels; for a current leaf this
    // is exactly its unique neighbour, so no adjacency mutation is needed.
    std::vector<long long> nsum(n + 1, 0);
    for (int v = 1; v <= n; ++v) {
        deg[v] = tree.degree(v);
        for (int w : tree.adj[v]) nsum[v] += w;
    }
    PruferCode out;
    out.code.reserve(n - 2);
    int ptr = 1;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;  // smallest-label leaf
    for (int i = 0; i < n - 2; ++i) {
        const int v = static_cast<int>(nsum[leaf]);
        out.code.push_back(v);
        nsum[v] -= leaf;
        deg[leaf] = 0;
        if (--deg[v] == 1 && v < ptr) {
            leaf = v;  // v is now the smallest remaining leaf
        } else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    return out;
}

LabelledTree prufer_decode(const PruferCode& code) {
    const int n = code.n();
    std::vector<int> deg(n + 1, 1);
    for (int v : code.code) {
        if (v < 1 || v > n)
            throw std::invalid_argument("prufer_decode: entry " + std::to_string(v) +
                                        " outside [1, " + std::to_string(n) + "]");
        ++deg[v];
    }
    LabelledTree t;
    t.n = n;
    t.adj.assign(n + 1, {});
    auto link = [&t](int u, int v) {
        t.adj[u].push_back(v);
        t.adj[v].push_back(u);
    };
    int ptr = 1;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int v : code.code) {
        link(leaf, v);
        deg[leaf] = 0;
        if (--deg[v] == 1 && v < ptr) {
            leaf = v;
        } else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    link(leaf, n);  // vertex n is never consumed, so it is one of the two survivors
    for (int v = 1; v <= n; ++v) std::sort(t.adj[v].begin(), t.adj[v].end());
    return t;
}

LabelledTree random_tree(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_tree: need n >= 2");
    Rng rng(seed);
    PruferCode code;
    code.code.resize(n - 2);
    for (int& entry : code.code) entry = rng.label(n);
    return prufer_decode(code);
}

std::map<int, int> degree_histogram(const LabelledTree& tree) {
    std::map<int, int> hist;
    for (int v = 1; v <= tree.n; ++v) ++hist[tree.degree(v)];
    return hist;
}

void DegreeSequence::validate() const {
    const int n = static_cast<int>(degrees.size());
    if (n < 2) throw std::invalid_argument("degree sequence: need at least 2 entries");
    long long sum = 0;
    for (int i = 0; i < n; ++i) {
        if (degrees[i] < 1) throw std::invalid_argument("degree sequence: entries must be >= 1");
        if (i > 0 && degrees[i] > degrees[i - 1])
            throw std::invalid_argument("degree sequence: must be non-increasing");
        sum += degrees[i];
    }
    if (sum != 2LL * (n - 1))
        throw std::invalid_argument("degree sequence: sum must be 2(n-1) for a tree");
}

LabelledTree greedy_tree_from_degree_sequence(const DegreeSequence& pi) {
    pi.validate();
    const int n = static_cast<int>(pi.degrees.size());
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    // BFS-greedy: vertex labels are assigned in BFS discovery order; the next
    // unassigned degree always goes to the next child created.
    std::size_t next_degree = 1;  // degrees[0] is the root's
    int next_label = 2;
    std::vector<std::pair<int, int>> queue{{1, pi.degrees[0]}};  // (vertex, child slots)
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [v, slots] = queue[head];
        for (int j = 0; j < slots; ++j) {
            const int child = next_label++;
            const int d = pi.degrees[next_degree++];
            edges.emplace_back(v, child);
            queue.emplace_back(child, d - 1);
        }
    }
    return LabelledTree::from_edges(n, edges);
}

LabelledTree read_tree(std::istream& in, const std::string& name) {
    long lineno = 1;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(name, lineno, "missing vertex count");
    int n = 0;
    {
        std::istringstream ss(line);
        std::string extra;
        if (!(ss >> n) || n < 1 || (ss >> extra))
            throw ParseError(name, lineno, "expected a positive vertex count");
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n > 0 ? n - 1 : 0);
    for (int i = 0; i < n - 1; ++i) {
        ++lineno;
        if (!std::getline(in, line)) throw ParseError(name, lineno, "unexpected end of file");
        std::istringstream ss(line);
        int u = 0, v = 0;
        std::string extra;
        if (!(ss >> u >> v) || (ss >> extra))
            throw ParseError(name, lineno, "expected 'u v'");
        if (!(1 <= u && u < v && v <= n))
            throw ParseError(name, lineno, "edge must satisfy 1 <= u < v <= n");
        edges.emplace_back(u, v);
    }
    try {
        return LabelledTree::from_edges(n, edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(name + ": " + e.what());
    }
}

void write_tree(const LabelledTree& tree, std::ostream& out) {
    out << tree.n << '\n';
    for (int u = 1; u <= tree.n; ++u)
        for (int w : tree.adj[u])
            if (u < w) out << u << ' ' << w << '\n';
}

bool same_edge_set(const LabelledTree& a, const LabelledTree& b) {
    if (a.n != b.n) return false;
    for (int v = 1; v <= a.n; ++v)
        if (a.adj[v] != b.adj[v]) return false;
    return true;
}

}  // namespace subtrees
