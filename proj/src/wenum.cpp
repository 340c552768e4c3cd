#include "sdn/wenum.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <unordered_map>

#include "sdn/graph.hpp"

namespace sdn {

namespace {

void require_genus(int g) {
    if (g < 1 || g > kMaxGenus)
        throw DomainError("genus must be in [1, " + std::to_string(kMaxGenus) + "], got " + std::to_string(g));
}

void require_binary(const LinearCode& c) {
    if (c.field() != Field::F2) throw UsageError("joint weight enumerators are defined here for binary codes");
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceError("enumerator coefficient exceeds 64 bits");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("enumerator coefficient exceeds 64 bits");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceError("intermediate coefficient exceeds 64 bits");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("intermediate coefficient exceeds 64 bits");
    return r;
}

// Open-addressing counter keyed by nonzero 64-bit words.
class FlatCounter {
public:
    FlatCounter() : keys_(1024, 0), vals_(1024, 0) {}

    void add(std::uint64_t key, std::uint64_t v) {
        std::size_t mask = keys_.size() - 1;
        std::size_t i = mix(key) & mask;
        while (true) {
            if (keys_[i] == key) {
                vals_[i] += v;
                return;
            }
            if (keys_[i] == 0) {
                keys_[i] = key;
                vals_[i] = v;
                if (2 * ++size_ > keys_.size()) grow();
                return;
            }
            i = (i + 1) & mask;
        }
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (keys_[i] != 0) fn(keys_[i], vals_[i]);
    }

private:
    static std::size_t mix(std::uint64_t x) {
        x ^= x >> 31;
        x *= 0x7fb5d329728ea185ull;
        x ^= x >> 27;
        return static_cast<std::size_t>(x);
    }

    void grow() {
        std::vector<std::uint64_t> k(keys_.size() * 2, 0), v(keys_.size() * 2, 0);
        std::swap(k, keys_);
        std::swap(v, vals_);
        size_ = 0;
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] != 0) add(k[i], v[i]);
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::uint64_t> vals_;
    std::size_t size_ = 0;
};

// Packs the popcounts of the 2^r parts (part b in byte b).
template <int R>
inline std::uint64_t pack_parts(const std::array<std::uint64_t, 8>& parts) {
    std::uint64_t key = 0;
    for (int b = 0; b < (1 << R); ++b) key |= static_cast<std::uint64_t>(std::popcount(parts[b])) << (8 * b);
    return key;
}

inline std::uint64_t pack_parts(const std::array<std::uint64_t, 8>& parts, int r) {
    switch (r) {
        case 0: return pack_parts<0>(parts);
        case 1: return pack_parts<1>(parts);
        case 2: return pack_parts<2>(parts);
        default: return pack_parts<3>(parts);
    }
}

// Splits every part by u; the new bit becomes the least significant index bit,
// so the first vector split on ends up most significant.
inline std::array<std::uint64_t, 8> split(const std::array<std::uint64_t, 8>& parts, int level, std::uint64_t u) {
    std::array<std::uint64_t, 8> out{};
    for (int i = 0; i < (1 << level); ++i) {
        out[2 * i] = parts[i] & ~u;
        out[2 * i + 1] = parts[i] & u;
    }
    return out;
}

std::vector<std::uint64_t> codeword_table(const LinearCode& c) {
    const int k = c.dimension();
    if (k > 26) throw ResourceError("code dimension " + std::to_string(k) + " is too large for a codeword table");
    std::vector<std::uint64_t> table(std::size_t{1} << k, 0);
    for (std::size_t m = 1; m < table.size(); ++m)
        table[m] = table[m & (m - 1)] ^ c.generators()[static_cast<std::size_t>(std::countr_zero(m))].plane0();
    return table;
}

// Independent r-tuples (A_1..A_r) in F2^g, each given as the table b -> A b
// where bit (r - j) of b selects A_j.
std::vector<std::array<std::uint8_t, 8>> injective_maps(int r, int g) {
    std::vector<std::array<std::uint8_t, 8>> out;
    const unsigned q = 1u << g;
    std::vector<unsigned> cols(static_cast<std::size_t>(r), 0);
    const std::uint64_t total = std::uint64_t{1} << (g * r);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t x = t;
        for (auto& col : cols) {
            col = static_cast<unsigned>(x % q);
            x /= q;
        }
        std::array<std::uint8_t, 8> image{};
        for (unsigned b = 0; b < (1u << r); ++b) {
            unsigned a = 0;
            for (int j = 0; j < r; ++j)
                if ((b >> (r - 1 - j)) & 1u) a ^= cols[static_cast<std::size_t>(j)];
            image[b] = static_cast<std::uint8_t>(a);
        }
        bool injective = true;
        for (unsigned b = 1; b < (1u << r); ++b)
            if (image[b] == 0) injective = false;
        if (injective) out.push_back(image);
    }
    return out;
}

GenusEnumerator from_counter(int g, int n, const std::map<std::uint64_t, std::uint64_t>& acc) {
    GenusEnumerator w;
    w.genus = g;
    w.length = n;
    for (const auto& [key, v] : acc) w.terms.emplace(Monomial(key), v);
    return w;
}

}  // namespace

// ---------------------------------------------------------------------------

Monomial Monomial::from_exponents(int genus, std::span<const int> exponents) {
    require_genus(genus);
    if (exponents.size() != (std::size_t{1} << genus)) throw UsageError("need one exponent per variable");
    std::uint64_t p = 0;
    for (std::size_t a = 0; a < exponents.size(); ++a) {
        if (exponents[a] < 0 || exponents[a] > kMaxLength) throw UsageError("exponent out of range");
        p |= static_cast<std::uint64_t>(exponents[a]) << (8 * a);
    }
    return Monomial(p);
}

Monomial Monomial::parse(int genus, std::string_view text) {
    require_genus(genus);
    std::vector<int> e(std::size_t{1} << genus, 0);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '*')) ++i;
    };
    skip();
    if (text.substr(i) == "1") return Monomial();
    while (i < text.size()) {
        if (text[i] != 'x') throw UsageError("bad monomial '" + std::string(text) + "'");
        ++i;
        if (i < text.size() && text[i] == '_') ++i;
        unsigned a = 0;
        for (int j = 0; j < genus; ++j, ++i) {
            if (i >= text.size() || (text[i] != '0' && text[i] != '1'))
                throw UsageError("variable label needs " + std::to_string(genus) + " binary digits in '" +
                                 std::string(text) + "'");
            a = (a << 1) | static_cast<unsigned>(text[i] - '0');
        }
        int power = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            power = 0;
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw UsageError("missing exponent in '" + std::string(text) + "'");
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                power = power * 10 + (text[i++] - '0');
        }
        e[a] += power;
        skip();
    }
    return from_exponents(genus, e);
}

int Monomial::degree() const noexcept {
    int d = 0;
    for (unsigned a = 0; a < 8; ++a) d += exponent(a);
    return d;
}

std::string variable_label(int genus, unsigned a) {
    std::string s(static_cast<std::size_t>(genus), '0');
    for (int j = 0; j < genus; ++j)
        if ((a >> (genus - 1 - j)) & 1u) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

std::string Monomial::to_string(int genus) const {
    std::string out;
    for (unsigned a = 0; a < (1u << genus); ++a) {
        const int e = exponent(a);
        if (e == 0) continue;
        if (!out.empty()) out += ' ';
        out += "x" + variable_label(genus, a);
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

std::uint64_t GenusEnumerator::coefficient(const Monomial& m) const {
    const auto it = terms.find(m);
    return it == terms.end() ? 0 : it->second;
}

BigInt GenusEnumerator::coefficient_sum() const {
    BigInt s = 0;
    for (const auto& [m, v] : terms) s += BigInt(std::to_string(v));
    return s;
}

std::uint64_t coefficient(const GenusEnumerator& w, const Monomial& m) {
    if (m.degree() != w.length)
        throw UsageError("monomial of degree " + std::to_string(m.degree()) + " queried in an enumerator of degree " +
                         std::to_string(w.length));
    if (w.genus < kMaxGenus && (m.packed() >> (8u << w.genus)) != 0)
        throw UsageError("monomial uses variables outside genus " + std::to_string(w.genus));
    return w.coefficient(m);
}

BigInt subspace_count(int k, int g) {
    BigInt total = 0;
    for (int r = 0; r <= std::min(k, g); ++r) {
        BigInt num = 1, den = 1;
        for (int i = 0; i < r; ++i) {
            num *= pow_big(2, static_cast<unsigned long>(k - i)) - 1;
            den *= pow_big(2, static_cast<unsigned long>(i + 1)) - 1;
        }
        total += num / den;
    }
    return total;
}

GenusEnumerator genus_enumerator(const LinearCode& c, int g, const ExecContext& ctx, std::uint64_t work_budget) {
    require_binary(c);
    require_genus(g);
    const int k = c.dimension();
    const int n = c.length();
    const BigInt work = subspace_count(k, g);
    if (work > BigInt(std::to_string(work_budget)))
        throw ResourceError("genus-" + std::to_string(g) + " enumerator needs " + to_string(work) +
                            " subspaces, budget is " + std::to_string(work_budget));
    const std::vector<std::uint64_t> table = codeword_table(c);
    const std::uint64_t full = length_mask(n);
    const int threads = std::max(1, ctx.threads);

    std::map<std::uint64_t, std::uint64_t> acc;
    for (int r = 0; r <= std::min(k, g); ++r) {
        // Pivot sets of r-dimensional subspaces of the message space F2^k.
        std::vector<std::array<int, 3>> combos;
        {
            std::array<int, 3> p{};
            auto rec = [&](auto&& self, int j, int from) -> void {
                if (j == r) {
                    combos.push_back(p);
                    return;
                }
                for (int x = from; x < k; ++x) {
                    p[static_cast<std::size_t>(j)] = x;
                    self(self, j + 1, x + 1);
                }
            };
            rec(rec, 0, 0);
        }
        struct Task {
            std::size_t combo;
            std::uint64_t first;  // message of row 1
        };
        std::vector<Task> tasks;
        std::vector<std::array<std::uint64_t, 3>> free(combos.size());
        for (std::size_t ci = 0; ci < combos.size(); ++ci) {
            std::uint64_t pivots = 0;
            for (int j = 0; j < r; ++j) pivots |= std::uint64_t{1} << combos[ci][static_cast<std::size_t>(j)];
            for (int j = 0; j < r; ++j) {
                const int p = combos[ci][static_cast<std::size_t>(j)];
                free[ci][static_cast<std::size_t>(j)] = ~((std::uint64_t{2} << p) - 1) & length_mask(k) & ~pivots;
            }
            if (r == 0) {
                tasks.push_back({ci, 0});
                continue;
            }
            const std::uint64_t f1 = free[ci][0];
            const std::uint64_t lead = std::uint64_t{1} << combos[ci][0];
            std::uint64_t s = 0;
            do {
                tasks.push_back({ci, lead | s});
                s = ((s | ~f1) + 1) & f1;
            } while (s != 0);
        }

        std::vector<FlatCounter> hist(static_cast<std::size_t>(threads));
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
        for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(tasks.size()); ++ti) {
            const Task& task = tasks[static_cast<std::size_t>(ti)];
            FlatCounter& h = hist[static_cast<std::size_t>(current_thread())];
            std::array<std::uint64_t, 8> parts{};
            parts[0] = full;
            if (r == 0) {
                h.add(pack_parts(parts, 0), 1);
                continue;
            }
            const auto& combo = combos[task.combo];
            const auto& fr = free[task.combo];
            auto rec = [&](auto&& self, int j, const std::array<std::uint64_t, 8>& ps) -> void {
                if (j == r) {
                    h.add(pack_parts(ps, r), 1);
                    return;
                }
                const std::uint64_t lead = std::uint64_t{1} << combo[static_cast<std::size_t>(j)];
                const std::uint64_t f = fr[static_cast<std::size_t>(j)];
                std::uint64_t s = 0;
                do {
                    self(self, j + 1, split(ps, j, table[lead | s]));
                    s = ((s | ~f) + 1) & f;
                } while (s != 0);
            };
            rec(rec, 1, split(parts, 0, table[task.first]));
        }

        const auto maps = injective_maps(r, g);
        for (const auto& h : hist) {
            h.for_each([&](std::uint64_t key, std::uint64_t count) {
                for (const auto& image : maps) {
                    std::uint64_t e = 0;
                    for (unsigned b = 0; b < (1u << r); ++b) e += ((key >> (8 * b)) & 0xffu) << (8 * image[b]);
                    auto& slot = acc[e];
                    slot = checked_add(slot, count);
                }
            });
        }
    }
    return from_counter(g, n, acc);
}

GenusEnumerator genus_enumerator_bruteforce(const LinearCode& c, int g, const ExecContext& ctx,
                                            std::uint64_t tuple_budget) {
    require_binary(c);
    require_genus(g);
    const BigInt tuples = pow_big(2, static_cast<unsigned long>(c.dimension() * g));
    if (tuples > BigInt(std::to_string(tuple_budget)))
        throw ResourceError(to_string(tuples) + " codeword tuples exceed the tuple budget of " +
                            std::to_string(tuple_budget));
    const std::vector<std::uint64_t> words = codeword_table(c);
    const std::uint64_t full = length_mask(c.length());
    const int threads = std::max(1, ctx.threads);
    std::vector<FlatCounter> hist(static_cast<std::size_t>(threads));
    const std::int64_t m = static_cast<std::int64_t>(words.size());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < m; ++i) {
        FlatCounter& h = hist[static_cast<std::size_t>(current_thread())];
        std::array<std::uint64_t, 8> p0{};
        p0[0] = full;
        const auto p1 = split(p0, 0, words[static_cast<std::size_t>(i)]);
        if (g == 1) {
            h.add(pack_parts<1>(p1), 1);
            continue;
        }
        for (std::uint64_t w2 : words) {
            const auto p2 = split(p1, 1, w2);
            if (g == 2) {
                h.add(pack_parts<2>(p2), 1);
                continue;
            }
            for (std::uint64_t w3 : words) h.add(pack_parts<3>(split(p2, 2, w3)), 1);
        }
    }
    std::map<std::uint64_t, std::uint64_t> acc;
    for (const auto& h : hist)
        h.for_each([&](std::uint64_t key, std::uint64_t v) { acc[key] = checked_add(acc[key], v); });
    return from_counter(g, c.length(), acc);
}

GenusEnumerator genus_enumerator_reference(const LinearCode& c, int g, std::uint64_t tuple_budget) {
    require_binary(c);
    require_genus(g);
    const int k = c.dimension();
    const int n = c.length();
    const BigInt tuples = pow_big(2, static_cast<unsigned long>(k * g));
    if (tuples > BigInt(std::to_string(tuple_budget)))
        throw ResourceError(to_string(tuples) + " codeword tuples exceed the tuple budget of " +
                            std::to_string(tuple_budget));
    const std::uint64_t total = to_u64(tuples);
    std::map<Monomial, std::uint64_t> terms;
    std::vector<FieldElement> msg(static_cast<std::size_t>(k));
    std::vector<GFVector> tuple(static_cast<std::size_t>(g));
    std::vector<int> e(std::size_t{1} << g);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t x = t;
        for (int j = 0; j < g; ++j) {
            for (auto& d : msg) {
                d = static_cast<FieldElement>(x & 1u);
                x >>= 1;
            }
            tuple[static_cast<std::size_t>(j)] = c.encode(msg);
        }
        std::fill(e.begin(), e.end(), 0);
        for (int i = 0; i < n; ++i) {
            unsigned a = 0;
            for (int j = 0; j < g; ++j) a = (a << 1) | tuple[static_cast<std::size_t>(j)][i];
            ++e[a];
        }
        ++terms[Monomial::from_exponents(g, e)];
    }
    GenusEnumerator w;
    w.genus = g;
    w.length = n;
    w.terms = std::move(terms);
    return w;
}

GenusEnumerator unit_enumerator(int g) {
    require_genus(g);
    GenusEnumerator w;
    w.genus = g;
    w.length = 0;
    w.terms.emplace(Monomial(), 1);
    return w;
}

GenusEnumerator product(const GenusEnumerator& a, const GenusEnumerator& b) {
    if (a.genus != b.genus) throw UsageError("product of enumerators of different genus");
    if (a.length + b.length > kMaxLength) throw UsageError("product degree exceeds 64");
    std::unordered_map<std::uint64_t, std::uint64_t> acc;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            auto& slot = acc[ma.packed() + mb.packed()];
            slot = checked_add(slot, checked_mul(ca, cb));
        }
    return from_counter(a.genus, a.length + b.length, {acc.begin(), acc.end()});
}

GenusEnumerator product(std::span<const GenusEnumerator> factors) {
    if (factors.empty()) throw UsageError("product of no enumerators");
    GenusEnumerator w = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) w = product(w, factors[i]);
    return w;
}

GenusEnumerator specialize(const GenusEnumerator& w) {
    if (w.genus < 2) throw DomainError("specialize needs genus at least 2");
    const int g = w.genus - 1;
    std::map<std::uint64_t, std::uint64_t> acc;
    for (const auto& [m, v] : w.terms) {
        bool vanishes = false;
        std::uint64_t e = 0;
        for (unsigned a = 0; a < (1u << w.genus); ++a) {
            if (m.exponent(a) == 0) continue;
            if (a & 1u) {
                vanishes = true;
                break;
            }
            e |= static_cast<std::uint64_t>(m.exponent(a)) << (8 * (a >> 1));
        }
        if (!vanishes) acc[e] = checked_add(acc[e], v);
    }
    return from_counter(g, w.length, acc);
}

GenusEnumerator permute_variables(const GenusEnumerator& w, std::span<const unsigned> perm) {
    const unsigned q = 1u << w.genus;
    if (perm.size() != q) throw UsageError("permutation must act on all 2^g variables");
    std::vector<bool> hit(q, false);
    for (unsigned a : perm) {
        if (a >= q || hit[a]) throw UsageError("not a permutation of the variables");
        hit[a] = true;
    }
    std::map<std::uint64_t, std::uint64_t> acc;
    for (const auto& [m, v] : w.terms) {
        std::uint64_t e = 0;
        for (unsigned a = 0; a < q; ++a) e |= static_cast<std::uint64_t>(m.exponent(a)) << (8 * perm[a]);
        acc[e] = checked_add(acc[e], v);
    }
    return from_counter(w.genus, w.length, acc);
}

nlohmann::json to_json(const GenusEnumerator& w) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, v] : w.terms) {
        nlohmann::json exps = nlohmann::json::object();
        for (unsigned a = 0; a < (1u << w.genus); ++a)
            if (m.exponent(a) != 0) exps[variable_label(w.genus, a)] = m.exponent(a);
        terms.push_back({{"exps", exps}, {"coeff", v}});
    }
    return {{"genus", w.genus}, {"length", w.length}, {"terms", terms}};
}

// ---------------------------------------------------------------------------
// Coset sums.

namespace {

using SignedPoly = std::unordered_map<std::uint64_t, std::int64_t>;

// Byte-wise e <= t (all bytes below 128).
inline bool divides(std::uint64_t e, std::uint64_t t) {
    constexpr std::uint64_t high = 0x8080808080808080ull;
    return (((t | high) - e) & high) == high;
}

struct Restriction {
    std::vector<std::uint64_t> targets;
    bool keep(std::uint64_t e) const {
        if (targets.empty()) return true;
        return std::any_of(targets.begin(), targets.end(), [&](std::uint64_t t) { return divides(e, t); });
    }
};

SignedPoly multiply(const SignedPoly& a, const SignedPoly& b, const Restriction& keep) {
    SignedPoly out;
    out.reserve(a.size() + b.size());
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            const std::uint64_t e = ea + eb;
            if (!keep.keep(e)) continue;
            auto& slot = out[e];
            slot = checked_add(slot, checked_mul(ca, cb));
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

inline unsigned column(const std::vector<std::uint64_t>& rows, int g, int i) {
    unsigned a = 0;
    for (int j = 0; j < g; ++j) a = (a << 1) | static_cast<unsigned>((rows[static_cast<std::size_t>(j)] >> i) & 1u);
    return a;
}

SignedPoly doubled_even_poly(int m, const std::vector<std::uint64_t>& shift, int g, const Restriction& keep) {
    const unsigned q = 1u << g;
    SignedPoly total;
    for (unsigned chi = 0; chi < q; ++chi) {
        SignedPoly acc{{0, 1}};
        for (int p = 0; p < m / 2; ++p) {
            const unsigned sigma = column(shift, g, 2 * p);
            const unsigned tau = column(shift, g, 2 * p + 1);
            SignedPoly factor;
            for (unsigned a = 0; a < q; ++a) {
                const std::int64_t sign = (std::popcount(chi & a) & 1) ? -1 : 1;
                const std::uint64_t e = (std::uint64_t{1} << (8 * (a ^ sigma))) + (std::uint64_t{1} << (8 * (a ^ tau)));
                factor[e] += sign;
            }
            acc = multiply(acc, factor, keep);
        }
        for (const auto& [e, v] : acc) total[e] = checked_add(total[e], v);
    }
    SignedPoly out;
    for (const auto& [e, v] : total) {
        if (v % static_cast<std::int64_t>(q) != 0) throw std::logic_error("parity-character sum is not divisible by 2^g");
        if (v != 0) out[e] = v / static_cast<std::int64_t>(q);
    }
    return out;
}

SignedPoly generic_block_poly(const LinearCode& c, const std::vector<std::uint64_t>& shift, int g,
                              const Restriction& keep) {
    const std::vector<std::uint64_t> words = codeword_table(c);
    const std::uint64_t full = length_mask(c.length());
    SignedPoly out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(g), 0);
    while (true) {
        std::array<std::uint64_t, 8> parts{};
        parts[0] = full;
        for (int j = 0; j < g; ++j)
            parts = split(parts, j, words[idx[static_cast<std::size_t>(j)]] ^ shift[static_cast<std::size_t>(j)]);
        const std::uint64_t e = pack_parts(parts, g);
        if (keep.keep(e)) out[e] += 1;
        int j = g - 1;
        while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == words.size()) idx[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
    }
    return out;
}

}  // namespace

CodeBlock generic_block(const LinearCode& c) { return CodeBlock{c, false}; }

CodeBlock doubled_even_block(int m) { return CodeBlock{standard_code(StandardCode::Dn, m), true}; }

GenusEnumerator coset_sum_enumerator(std::span<const CodeBlock> blocks, std::span<const GFVector> shifts, int g,
                                     std::span<const Monomial> targets, std::uint64_t tuple_budget) {
    require_genus(g);
    if (blocks.empty()) throw UsageError("coset sum needs at least one block");
    if (shifts.empty()) throw UsageError("coset sum needs at least one shift");
    std::vector<LinearCode> parts;
    for (const auto& b : blocks) {
        require_binary(b.code);
        if (b.doubled_even && !(b.code == standard_code(StandardCode::Dn, b.code.length())))
            throw PreconditionError("block marked doubled-even is not d_m");
        if (!b.doubled_even) {
            const BigInt t = pow_big(2, static_cast<unsigned long>(b.code.dimension() * g));
            if (t > BigInt(std::to_string(tuple_budget)))
                throw ResourceError("generic block needs " + to_string(t) + " tuples, budget is " +
                                    std::to_string(tuple_budget));
        }
        parts.push_back(b.code);
    }
    const LinearCode sub = direct_sum(parts);
    const int n = sub.length();

    // The shifts must represent distinct cosets closed under addition.
    std::vector<GFVector> reps;
    for (const auto& s : shifts) {
        if (s.field() != Field::F2 || s.length() != n) throw UsageError("shift does not match the subcode");
        reps.push_back(sub.reduce(s));
    }
    std::vector<GFVector> sorted = reps;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("two shifts lie in the same coset");
    for (const auto& a : reps)
        for (const auto& b : reps)
            if (!std::binary_search(sorted.begin(), sorted.end(), sub.reduce(add(a, b))))
                throw PreconditionError("the union of cosets is not closed under addition");

    Restriction keep;
    for (const auto& t : targets) {
        if (t.degree() != n) throw UsageError("target monomial degree does not match the code length");
        keep.targets.push_back(t.packed());
    }

    std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, SignedPoly> cache;
    SignedPoly total;
    const std::size_t s = shifts.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(g), 0);
    while (true) {
        SignedPoly acc{{0, 1}};
        int offset = 0;
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            const int len = blocks[bi].code.length();
            std::vector<std::uint64_t> local(static_cast<std::size_t>(g));
            for (int j = 0; j < g; ++j)
                local[static_cast<std::size_t>(j)] =
                    (shifts[idx[static_cast<std::size_t>(j)]].plane0() >> offset) & length_mask(len);
            auto key = std::make_pair(bi, local);
            auto it = cache.find(key);
            if (it == cache.end()) {
                SignedPoly poly = blocks[bi].doubled_even ? doubled_even_poly(len, local, g, keep)
                                                          : generic_block_poly(blocks[bi].code, local, g, keep);
                it = cache.emplace(std::move(key), std::move(poly)).first;
            }
            acc = multiply(acc, it->second, keep);
            offset += len;
        }
        for (const auto& [e, v] : acc) total[e] = checked_add(total[e], v);
        int j = g - 1;
        while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == s) idx[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
    }

    std::map<std::uint64_t, std::uint64_t> acc;
    for (const auto& [e, v] : total) {
        if (v < 0) throw std::logic_error("coset sum produced a negative coefficient");
        if (v != 0) acc[e] = static_cast<std::uint64_t>(v);
    }
    return from_counter(g, n, acc);
}

GenusEnumerator coset_sum_enumerator(const LinearCode& subcode, std::span<const GFVector> shifts, int g,
                                     std::span<const Monomial> targets, std::uint64_t tuple_budget) {
    const CodeBlock block = generic_block(subcode);
    return coset_sum_enumerator(std::span<const CodeBlock>(&block, 1), shifts, g, targets, tuple_budget);
}

// ---------------------------------------------------------------------------
// Ranks and matrices.

int rank_over_rationals(const std::vector<std::vector<BigInt>>& rows) {
    // Fraction-free (Bareiss) elimination; every division below is exact.
    std::vector<std::vector<BigInt>> m = rows;
    const std::size_t nr = m.size();
    if (nr == 0) return 0;
    const std::size_t nc = m.front().size();
    for (const auto& r : m)
        if (r.size() != nc) throw UsageError("ragged matrix");
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = rank;
        while (piv < nr && m[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            for (std::size_t j = col + 1; j < nc; ++j) {
                BigInt v = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

nlohmann::json to_json(const RankMatrix& m) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : m.columns) cols.push_back(c.to_string(m.genus));
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        nlohmann::json entries = nlohmann::json::array();
        for (std::size_t j = 0; j < m.entries[i].size(); ++j)
            entries.push_back({{"value", big_to_json(m.entries[i][j])},
                               {"provenance", m.provenance[i][j] == Provenance::Computed ? "computed" : "published"},
                               {"published", big_to_json(m.published[i][j])}});
        rows.push_back({{"label", m.row_labels[i]}, {"entries", entries}});
    }
    return {{"name", m.name},
            {"genus", m.genus},
            {"columns", cols},
            {"rows", rows},
            {"rank", m.rank},
            {"published_rank", m.published_rank},
            {"matches_published", m.matches_published()}};
}

namespace {

LinearCode c1_glued_code() {
    const LinearCode d12 = standard_code(StandardCode::Dn, 12);
    const LinearCode base = direct_sum(d12, d12);
    std::vector<GFVector> rows = base.generators();
    rows.push_back(GFVector::parse(Field::F2, "101010101010110000000000"));
    rows.push_back(GFVector::parse(Field::F2, "110000000000101010101010"));
    return LinearCode::from_generators(rows);
}

std::vector<std::vector<BigInt>> to_big(const std::vector<std::vector<long>>& v) {
    std::vector<std::vector<BigInt>> out;
    for (const auto& r : v) {
        std::vector<BigInt> row;
        for (long x : r) row.emplace_back(x);
        out.push_back(std::move(row));
    }
    return out;
}

RankMatrix fill_matrix(RankMatrix m, const std::vector<const LinearCode*>& codes,
                       const std::vector<std::optional<GenusEnumerator>>& known, const ExecContext& ctx,
                       std::uint64_t work_budget) {
    for (std::size_t i = 0; i < codes.size(); ++i) {
        std::optional<GenusEnumerator> w = known[i];
        if (!w && subspace_count(codes[i]->dimension(), m.genus) <= BigInt(std::to_string(work_budget)))
            w = genus_enumerator(*codes[i], m.genus, ctx, work_budget);
        std::vector<BigInt> row;
        std::vector<Provenance> prov;
        for (std::size_t j = 0; j < m.columns.size(); ++j) {
            if (w) {
                row.emplace_back(std::to_string(coefficient(*w, m.columns[j])));
                prov.push_back(Provenance::Computed);
            } else {
                row.push_back(m.published[i][j]);
                prov.push_back(Provenance::Published);
            }
        }
        m.entries.push_back(std::move(row));
        m.provenance.push_back(std::move(prov));
    }
    m.rank = rank_over_rationals(m.entries);
    m.published_rank = rank_over_rationals(m.published);
    return m;
}

}  // namespace

Length24Codes length24_codes(const ExecContext& ctx) {
    Length24Codes out;
    const LinearCode e8 = standard_code(StandardCode::E8);
    const std::vector<LinearCode> three(3, e8);
    out.e8_cubed = direct_sum(three);
    out.d24_plus = standard_code(StandardCode::DnPlus, 24);
    out.c1_glued = c1_glued_code();
    out.d16_plus_e8 = direct_sum(standard_code(StandardCode::DnPlus, 16), e8);
    bool have_c1 = false, have_c8 = false;
    for (const auto& cls : neighbor_classes(out.d24_plus, Family::TypeII, ctx)) {
        const auto a4 = cls.fingerprint.genus1.at(4);
        if (a4 == 30) {
            out.c1 = cls.representative;
            have_c1 = true;
        } else if (a4 == 42) {
            out.c8 = cls.representative;
            have_c8 = true;
        }
    }
    if (!have_c1 || !have_c8) throw std::logic_error("neighbor search from d_24^+ did not reach both classes");
    return out;
}

RankMatrix rank_matrix_L(const Length24Codes& codes, const ExecContext& ctx, std::uint64_t work_budget) {
    RankMatrix m;
    m.name = "L";
    m.genus = 2;
    m.row_labels = {"e_8^3", "d_24^+", "C_1"};
    for (const char* s : {"x00^24", "x00^20 x01^4", "x00^16 x01^8"}) m.columns.push_back(Monomial::parse(2, s));
    m.published = to_big({{1, 42, 591}, {1, 66, 495}, {1, 30, 639}});
    const LinearCode e8 = standard_code(StandardCode::E8);
    const GenusEnumerator w8 = genus_enumerator(e8, 2, ctx, work_budget);
    const std::vector<GenusEnumerator> cube(3, w8);
    return fill_matrix(std::move(m), {&codes.e8_cubed, &codes.d24_plus, &codes.c1},
                       {product(cube), std::nullopt, std::nullopt}, ctx, work_budget);
}

RankMatrix rank_matrix_M(const Length24Codes& codes, const ExecContext& ctx, std::uint64_t work_budget) {
    RankMatrix m;
    m.name = "M";
    m.genus = 3;
    m.row_labels = {"e_8^3", "d_24^+", "C_8", "C_1"};
    for (const char* s : {"x000^20 x011^4", "x010^16 x101^8", "x001^8 x100^4 x110^12",
                          "x000^4 x010^2 x001^6 x100^6 x111^6"})
        m.columns.push_back(Monomial::parse(3, s));
    m.published = to_big({{42, 591, 9491, 592704}, {66, 495, 13860, 110800}, {42, 591, 9492, 762048},
                          {30, 639, 7020, 659520}});
    const LinearCode e8 = standard_code(StandardCode::E8);
    const GenusEnumerator w8 = genus_enumerator(e8, 3, ctx, work_budget);
    const std::vector<GenusEnumerator> cube(3, w8);
    return fill_matrix(std::move(m), {&codes.e8_cubed, &codes.d24_plus, &codes.c8, &codes.c1},
                       {product(cube), std::nullopt, std::nullopt, std::nullopt}, ctx, work_budget);
}

int span_dimension(std::span<const LinearCode> codes, int g, const ExecContext& ctx, std::uint64_t work_budget) {
    if (codes.empty()) return 0;
    std::vector<GenusEnumerator> ws;
    for (const auto& c : codes) {
        if (c.length() != codes.front().length()) throw UsageError("span_dimension needs codes of one length");
        ws.push_back(genus_enumerator(c, g, ctx, work_budget));
    }
    std::map<Monomial, std::size_t> column;
    for (const auto& w : ws)
        for (const auto& [mono, v] : w.terms) column.emplace(mono, 0);
    std::size_t j = 0;
    for (auto& [mono, idx] : column) idx = j++;
    std::vector<std::vector<BigInt>> rows;
    for (const auto& w : ws) {
        std::vector<BigInt> row(column.size(), BigInt(0));
        for (const auto& [mono, v] : w.terms) row[column[mono]] = BigInt(std::to_string(v));
        rows.push_back(std::move(row));
    }
    return rank_over_rationals(rows);
}

CodeFingerprint fingerprint_with_genus2(const LinearCode& c, const ExecContext& ctx) {
    CodeFingerprint fp = fingerprint(c, ctx);
    std::vector<std::int64_t> sig;
    for (const auto& [m, v] : genus_enumerator(c, 2, ctx).terms) {
        sig.push_back(static_cast<std::int64_t>(m.packed()));
        sig.push_back(static_cast<std::int64_t>(v));
    }
    fp.genus2_signature = std::move(sig);
    return fp;
}

}  // namespace sdn
