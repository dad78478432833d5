#include "subtrees/subtree_count.hpp"

#include <stdexcept>
#include <vector>

#include "subtrees/errors.hpp"

namespace subtrees {

namespace {

// BFS order from root plus parent pointers; reversed BFS order is a valid
// bottom-up schedule (children always come later than their parent).
void bfs_order(const LabelledTree& t, int root, std::vector<int>& order, std::vector<int>& parent) {
    order.clear();
    order.reserve(t.n);
    parent.assign(t.n + 1, 0);
    parent[root] = -1;
    order.push_back(root);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int v = order[head];
        for (int w : t.adj[v])
            if (w != parent[v]) {
                parent[w] = v;
                order.push_back(w);
            }
    }
}

// d[v] = number of subtrees of the subtree below v (inclusive) that contain v.
std::vector<mpz_class> down_counts(const LabelledTree& t, int root) {
    std::vector<int> order, parent;
    bfs_order(t, root, order, parent);
    std::vector<mpz_class> d(t.n + 1, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        for (int w : t.adj[v])
            if (w != parent[v]) d[v] *= d[w] + 1;
    }
    return d;
}

}  // namespace

mpz_class rooted_count(const LabelledTree& tree, int v) {
    tree.check_vertex(v);
    return down_counts(tree, v)[v] + 1;  // +1 for the empty tree
}

mpz_class total_count(const LabelledTree& tree) {
    // root anywhere (vertex 1); d[v] counts exactly the subtrees whose
    // root-closest vertex is v, so the sum hits every subtree once
    std::vector<mpz_class> d = down_counts(tree, 1);
    mpz_class c = 0;
    for (int v = 1; v <= tree.n; ++v) c += d[v];
    return c;
}

BigFloat log_total_count(const LabelledTree& tree, mpfr_prec_t prec) {
    std::vector<int> order, parent;
    bfs_order(tree, 1, order, parent);

    // ld[v] = log d[v]; accumulate softplus(ld[child]) = log(1 + d[child])
    std::vector<BigFloat> ld(tree.n + 1, BigFloat(prec));
    BigFloat t(prec);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        for (int w : tree.adj[v])
            if (w != parent[v]) {
                mpfr_exp(t.get(), ld[w].get(), MPFR_RNDN);
                mpfr_log1p(t.get(), t.get(), MPFR_RNDN);
                mpfr_add(ld[v].get(), ld[v].get(), t.get(), MPFR_RNDN);
            }
    }

    // log c = logsumexp_v ld[v], pivoted at the max
    BigFloat mx(prec);
    mpfr_set(mx.get(), ld[1].get(), MPFR_RNDN);
    for (int v = 2; v <= tree.n; ++v)
        if (mpfr_cmp(ld[v].get(), mx.get()) > 0) mpfr_set(mx.get(), ld[v].get(), MPFR_RNDN);
    BigFloat acc(prec);
    for (int v = 1; v <= tree.n; ++v) {
        mpfr_sub(t.get(), ld[v].get(), mx.get(), MPFR_RNDN);
        mpfr_exp(t.get(), t.get(), MPFR_RNDN);
        mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
    }
    mpfr_log(acc.get(), acc.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), mx.get(), MPFR_RNDN);
    return acc;
}

mpz_class brute_force_count(const LabelledTree& tree) {
    if (tree.n > 20) throw SizeLimitError("brute_force_count: n > 20");
    const int n = tree.n;
    long count = 0;
    std::vector<int> stack;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        // BFS inside the mask from its lowest vertex
        const int start = __builtin_ctz(mask) + 1;
        unsigned seen = 1u << (start - 1);
        stack.assign(1, start);
        int reached = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : tree.adj[v]) {
                const unsigned bit = 1u << (w - 1);
                if ((mask & bit) && !(seen & bit)) {
                    seen |= bit;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached == __builtin_popcount(mask)) ++count;
    }
    return mpz_class(count);
}

}  // namespace subtrees
