#pragma once

// Naive reference models used as test oracles. Vectors are plain int arrays,
// codes are explicit sets of codewords, and nothing here calls into the library
// beyond conversion helpers at the boundary.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "sdn/code.hpp"

namespace oracle {

using Vec = std::vector<int>;
using CodeSet = std::set<Vec>;

// F4 as {0, 1, w, w^2} = {0, 1, 2, 3}; w^2 = w + 1.
inline int f4_add(int a, int b) { return a ^ b; }
inline int f4_mul(int a, int b) {
    if (a == 0 || b == 0) return 0;
    static const int log[4] = {0, 0, 1, 2};
    static const int exp[3] = {1, 2, 3};
    return exp[(log[a] + log[b]) % 3];
}
inline int f4_conj(int a) { return f4_mul(a, a); }

struct Field {
    int q;
    int add(int a, int b) const { return q == 4 ? f4_add(a, b) : (a + b) % q; }
    int mul(int a, int b) const { return q == 4 ? f4_mul(a, b) : (a * b) % q; }
    int conj(int a) const { return q == 4 ? f4_conj(a) : a; }
    // Form used for self-duality: Euclidean over F2, F3; Hermitian over F4.
    int dot(const Vec& u, const Vec& v) const {
        int s = 0;
        for (std::size_t i = 0; i < u.size(); ++i) s = add(s, mul(u[i], conj(v[i])));
        return s;
    }
};

inline Field field_of(sdn::Field f) {
    switch (f) {
        case sdn::Field::F2: return {2};
        case sdn::Field::F3: return {3};
        default: return {4};
    }
}

inline Vec to_vec(const sdn::GFVector& v) {
    Vec out(static_cast<std::size_t>(v.length()));
    for (int i = 0; i < v.length(); ++i) out[static_cast<std::size_t>(i)] = v[i];
    return out;
}

inline sdn::GFVector from_vec(sdn::Field f, const Vec& v) {
    std::vector<sdn::FieldElement> e(v.begin(), v.end());
    return sdn::GFVector::from_elements(f, e);
}

// Every vector of F_q^n, in lexicographic order.
inline std::vector<Vec> all_vectors(int q, int n) {
    std::vector<Vec> out;
    Vec v(static_cast<std::size_t>(n), 0);
    for (;;) {
        out.push_back(v);
        int i = n - 1;
        while (i >= 0 && v[static_cast<std::size_t>(i)] == q - 1) v[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) return out;
        ++v[static_cast<std::size_t>(i)];
    }
}

// Closure of `gens` under addition and scalar multiples.
inline CodeSet span(const Field& F, int n, const std::vector<Vec>& gens) {
    CodeSet s{Vec(static_cast<std::size_t>(n), 0)};
    for (const auto& g : gens) {
        CodeSet next = s;
        for (const auto& w : s)
            for (int a = 1; a < F.q; ++a) {
                Vec x = w;
                for (int i = 0; i < n; ++i)
                    x[static_cast<std::size_t>(i)] =
                        F.add(x[static_cast<std::size_t>(i)], F.mul(a, g[static_cast<std::size_t>(i)]));
                next.insert(x);
            }
        s = std::move(next);
    }
    return s;
}

inline CodeSet codewords(const sdn::LinearCode& c) {
    std::vector<Vec> gens;
    for (const auto& g : c.generators()) gens.push_back(to_vec(g));
    return span(field_of(c.field()), c.length(), gens);
}

inline bool self_orthogonal(const Field& F, const Vec& v) { return F.dot(v, v) == 0; }

// N_C(v) as a set: span of {w in C : w.v = 0} and v.
inline CodeSet neighbor(const Field& F, const CodeSet& c, const Vec& v) {
    std::vector<Vec> gens{v};
    for (const auto& w : c)
        if (F.dot(w, v) == 0) gens.push_back(w);
    // Reduce the generator list greedily so span() stays cheap.
    std::vector<Vec> basis;
    CodeSet cur{Vec(v.size(), 0)};
    for (const auto& g : gens) {
        if (cur.count(g)) continue;
        basis.push_back(g);
        cur = span(F, static_cast<int>(v.size()), basis);
    }
    return cur;
}

inline std::size_t intersection_size(const CodeSet& a, const CodeSet& b) {
    std::size_t k = 0;
    for (const auto& x : a) k += b.count(x);
    return k;
}

// Weight distribution by direct count.
inline std::vector<std::uint64_t> weights(const CodeSet& c, int n) {
    std::vector<std::uint64_t> w(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& x : c) ++w[static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](int e) { return e; }))];
    return w;
}

// Genus-g enumerator of a binary code by walking all g-tuples of codewords.
// Key: exponent vector indexed by the column value u_1...u_g read as binary.
inline std::map<std::vector<int>, std::uint64_t> genus_enumerator(const std::vector<std::uint64_t>& words, int n,
                                                                  int g) {
    std::map<std::vector<int>, std::uint64_t> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(g), 0);
    for (;;) {
        std::vector<int> e(std::size_t{1} << g, 0);
        for (int i = 0; i < n; ++i) {
            unsigned a = 0;
            for (int t = 0; t < g; ++t) a = (a << 1) | static_cast<unsigned>((words[idx[static_cast<std::size_t>(t)]] >> i) & 1u);
            ++e[a];
        }
        ++out[e];
        int t = g - 1;
        while (t >= 0 && idx[static_cast<std::size_t>(t)] + 1 == words.size()) idx[static_cast<std::size_t>(t--)] = 0;
        if (t < 0) return out;
        ++idx[static_cast<std::size_t>(t)];
    }
}

inline std::vector<std::uint64_t> binary_words(const sdn::LinearCode& c) {
    std::vector<std::uint64_t> out;
    for (const auto& v : codewords(c)) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) m |= std::uint64_t{1} << i;
        out.push_back(m);
    }
    return out;
}

// Rank over GF(p) for a large prime p; equals the rational rank for small integer matrices
// with overwhelming likelihood, and exactly for the matrices used in tests.
inline int rank_mod_p(std::vector<std::vector<long long>> m) {
    const long long p = 1000000007;
    auto pw = [&](long long b, long long e) {
        long long r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    for (auto& row : m)
        for (auto& x : row) x = ((x % p) + p) % p;
    int rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
        const long long inv = pw(m[static_cast<std::size_t>(rank)][c], p - 2);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
            const long long f = m[r][c] * inv % p;
            for (std::size_t k = 0; k < cols; ++k)
                m[r][k] = ((m[r][k] - f * m[static_cast<std::size_t>(rank)][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace oracle
