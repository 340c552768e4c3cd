#include "sdn/neighbors.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace sdn {

std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::TypeII: return "type2";
        case Family::TypeIII: return "type3";
        case Family::TypeIIIOnes: return "type3-ones";
        case Family::TypeIV: return "type4";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "type2" || name == "II") return Family::TypeII;
    if (name == "type3" || name == "III") return Family::TypeIII;
    if (name == "type3-ones" || name == "III1") return Family::TypeIIIOnes;
    if (name == "type4" || name == "IV") return Family::TypeIV;
    throw UsageError("unknown family '" + std::string(name) + "' (type2, type3, type3-ones, type4)");
}

Field family_field(Family f) noexcept {
    switch (f) {
        case Family::TypeII: return Field::F2;
        case Family::TypeIII:
        case Family::TypeIIIOnes: return Field::F3;
        case Family::TypeIV: return Field::F4;
    }
    return Field::F2;
}

bool family_length_ok(Family f, int n) noexcept {
    if (n <= 0 || n > kMaxLength) return false;
    switch (f) {
        case Family::TypeII: return n % 8 == 0;
        case Family::TypeIII: return n % 4 == 0;
        case Family::TypeIIIOnes: return n % 12 == 0;
        case Family::TypeIV: return n % 2 == 0;
    }
    return false;
}

void require_family_length(Family f, int n) {
    if (!family_length_ok(f, n)) {
        static constexpr std::array<const char*, 4> rule = {"n = 0 mod 8", "n = 0 mod 4", "n = 0 mod 12",
                                                            "n even"};
        throw DomainError(std::string(family_name(f)) + " needs " + rule[static_cast<int>(f)] + " and n <= 64, got " +
                          std::to_string(n));
    }
}

bool in_family(const LinearCode& c, Family f) {
    switch (f) {
        case Family::TypeII: return is_type_II(c);
        case Family::TypeIII: return is_type_III(c);
        case Family::TypeIIIOnes: return is_type_III(c) && contains_all_ones(c);
        case Family::TypeIV: return is_type_IV(c);
    }
    return false;
}

namespace {

// Family-specific conditions on v alone (everything except v not in C).
bool admissible(const GFVector& v, Family f) {
    if (!is_self_orthogonal(v)) return false;
    if (f == Family::TypeII) return v.weight() % 4 == 0;
    if (f == Family::TypeIIIOnes) return inner_product(v, GFVector::all_ones(v.field(), v.length())) == 0;
    return true;
}

void require_member(const LinearCode& c, Family f) {
    if (c.field() != family_field(f))
        throw UsageError("code over " + std::string(field_name(c.field())) + " does not match family " +
                         std::string(family_name(f)));
    require_family_length(f, c.length());
    if (!in_family(c, f)) throw PreconditionError("code is not a member of " + std::string(family_name(f)));
}

// Rows of C_0 followed by v; assumes the preconditions of neighbor().
std::vector<GFVector> neighbor_rows(const LinearCode& c, const GFVector& v) {
    const Field f = c.field();
    const auto& g = c.generators();
    int j = -1;
    FieldElement fj = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const FieldElement p = inner_product(g[i], v);
        if (p != 0) {
            j = static_cast<int>(i);
            fj = p;
            break;
        }
    }
    if (j < 0) throw PreconditionError("v is orthogonal to C, so v lies in C = C^perp");
    const FieldElement inv_fj = gf::inv(f, fj);
    std::vector<GFVector> rows;
    rows.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (static_cast<int>(i) == j) continue;
        const FieldElement p = inner_product(g[i], v);
        rows.push_back(p == 0 ? g[i] : sub(g[i], scale(gf::mul(f, p, inv_fj), g[static_cast<std::size_t>(j)])));
    }
    rows.push_back(v);
    return rows;
}

void check_neighbor_preconditions(const LinearCode& c, const GFVector& v) {
    if (v.field() != c.field() || v.length() != c.length())
        throw UsageError("vector does not match code field/length");
    if (!is_self_dual(c)) throw PreconditionError("C must be self-dual");
    if (!is_self_orthogonal(v)) throw PreconditionError("v must be self-orthogonal");
    if (c.contains(v)) throw PreconditionError("v must not lie in C");
}

std::vector<FieldElement> nonzero_elements(Field f) {
    std::vector<FieldElement> out;
    for (int a = 1; a < field_order(f); ++a) out.push_back(static_cast<FieldElement>(a));
    return out;
}

void sort_by_key(std::vector<LinearCode>& codes) {
    std::vector<std::pair<CodeKey, std::size_t>> keyed;
    keyed.reserve(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) keyed.emplace_back(codes[i].key(), i);
    std::sort(keyed.begin(), keyed.end());
    std::vector<LinearCode> out;
    out.reserve(codes.size());
    for (const auto& [k, i] : keyed) out.push_back(std::move(codes[i]));
    codes = std::move(out);
}

template <class Fn>
void scan_vectors(Field field, int n, const ExecContext& ctx, std::uint64_t vector_budget, Fn&& fn) {
    const BigInt total = pow_big(static_cast<unsigned long>(field_order(field)), static_cast<unsigned long>(n));
    if (!fits_u64(total) || to_u64(total) > vector_budget)
        throw ResourceError("scanning F" + std::to_string(field_order(field)) + "^" + std::to_string(n) + " needs " +
                            to_string(total) + " vectors, budget is " + std::to_string(vector_budget));
    const std::uint64_t mask = length_mask(n);
    const int threads = std::max(1, ctx.threads);

    if (field == Field::F2) {
        const int low = n / 2;
        const std::int64_t outer = std::int64_t{1} << (n - low);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::int64_t a = 0; a < outer; ++a) {
            const int t = current_thread();
            const std::uint64_t hi = static_cast<std::uint64_t>(a) << low;
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << low); ++b)
                fn(GFVector::from_planes(field, n, hi | b, 0), t);
        }
        return;
    }

    const std::int64_t outer = static_cast<std::int64_t>(mask) + 1;
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::int64_t a = 0; a < outer; ++a) {
        const int t = current_thread();
        const std::uint64_t p0 = static_cast<std::uint64_t>(a);
        if (field == Field::F3) {
            // p1 runs over the submasks of the coordinates left free by p0.
            const std::uint64_t free = ~p0 & mask;
            std::uint64_t p1 = 0;
            do {
                fn(GFVector::from_planes(field, n, p0, p1), t);
                p1 = ((p1 | ~free) + 1) & free;
            } while (p1 != 0);
        } else {
            for (std::uint64_t p1 = 0;; ++p1) {
                fn(GFVector::from_planes(field, n, p0, p1), t);
                if (p1 == mask) break;
            }
        }
    }
}

}  // namespace

bool is_eligible(const LinearCode& c, const GFVector& v, Family f) {
    if (v.field() != c.field() || v.length() != c.length()) return false;
    return admissible(v, f) && !c.contains(v);
}

nlohmann::json big_to_json(const BigInt& v) {
    if (fits_u64(v)) return to_u64(v);
    return to_string(v);
}

nlohmann::json to_json(const CountReport& r) {
    nlohmann::json j;
    j["label"] = r.label;
    j["predicted"] = r.predicted ? big_to_json(*r.predicted) : nlohmann::json(nullptr);
    j["observed"] = r.observed ? big_to_json(*r.observed) : nlohmann::json(nullptr);
    j["match"] = r.has_match() ? nlohmann::json(r.match()) : nlohmann::json(nullptr);
    return j;
}

LinearCode orthogonal_subcode(const LinearCode& c, const GFVector& v) {
    check_neighbor_preconditions(c, v);
    std::vector<GFVector> rows = neighbor_rows(c, v);
    rows.pop_back();
    return LinearCode::from_generators(c.field(), c.length(), rows);
}

LinearCode neighbor(const LinearCode& c, const GFVector& v) {
    check_neighbor_preconditions(c, v);
    return LinearCode::from_generators(c.field(), c.length(), neighbor_rows(c, v));
}

bool same_neighbor(const LinearCode& c, const GFVector& v1, const GFVector& v2) {
    return neighbor(c, v1) == neighbor(c, v2);
}

bool same_neighbor_by_criterion(const LinearCode& c, const GFVector& v1, const GFVector& v2) {
    check_neighbor_preconditions(c, v1);
    check_neighbor_preconditions(c, v2);
    for (FieldElement alpha : nonzero_elements(c.field())) {
        const GFVector w = sub(v2, scale(alpha, v1));
        if (inner_product(w, v1) == 0 && c.contains(w)) return true;
    }
    return false;
}

std::vector<LinearCode> distinct_neighbors(const LinearCode& c, Family f, const ExecContext& ctx) {
    require_member(c, f);
    const Field field = c.field();
    const int n = c.length();
    const int k = c.dimension();
    const int q = field_order(field);
    const auto& g = c.generators();
    const auto& piv = c.pivots();

    // Hyperplanes of C are kernels of w -> w.x; normalize the coefficient
    // vector y so that its first nonzero entry is 1.
    std::vector<std::vector<FieldElement>> ys;
    {
        std::vector<FieldElement> y(k, 0);
        const std::uint64_t total = pow_big(q, k).get_ui();
        for (std::uint64_t m = 1; m < total; ++m) {
            std::uint64_t x = m;
            for (auto& d : y) {
                d = static_cast<FieldElement>(x % q);
                x /= q;
            }
            const auto lead = std::find_if(y.begin(), y.end(), [](FieldElement e) { return e != 0; });
            if (*lead == 1) ys.push_back(y);
        }
    }

    const std::vector<FieldElement> scalars = [&] {
        std::vector<FieldElement> s{0};
        for (FieldElement a : nonzero_elements(field)) s.push_back(a);
        return s;
    }();

    std::vector<std::vector<LinearCode>> found(ys.size());
    const int threads = std::max(1, ctx.threads);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(ys.size()); ++idx) {
        const auto& y = ys[static_cast<std::size_t>(idx)];
        const int j = static_cast<int>(std::find_if(y.begin(), y.end(), [](FieldElement e) { return e != 0; }) -
                                       y.begin());
        // x has x_{p_i} = conj(y_i) on the pivots, so g_i.x = y_i.
        GFVector x(field, n);
        for (int i = 0; i < k; ++i)
            if (y[i] != 0) x = x.with(piv[i], gf::conj(field, y[i]));
        std::vector<GFVector> rows;
        rows.reserve(k);
        for (int i = 0; i < k; ++i) {
            if (i == j) continue;
            rows.push_back(y[i] == 0 ? g[i] : sub(g[i], scale(y[i], g[j])));
        }
        rows.push_back(x);
        for (FieldElement t : scalars) {
            const GFVector v = t == 0 ? x : add(x, scale(t, g[j]));
            if (!admissible(v, f)) continue;
            rows.back() = v;
            found[static_cast<std::size_t>(idx)].push_back(LinearCode::from_generators(field, n, rows));
        }
    }

    std::vector<LinearCode> out;
    for (auto& part : found)
        for (auto& d : part) out.push_back(std::move(d));
    sort_by_key(out);
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::logic_error("hyperplane neighbor kernel produced a duplicate");
    return out;
}

void for_each_vector(Field field, int n, const ExecContext& ctx, std::uint64_t vector_budget,
                     const std::function<void(const GFVector&, int)>& fn) {
    scan_vectors(field, n, ctx, vector_budget, fn);
}

std::vector<LinearCode> distinct_neighbors_scan(const LinearCode& c, Family f, const ExecContext& ctx,
                                                std::uint64_t vector_budget) {
    require_member(c, f);
    const int threads = std::max(1, ctx.threads);
    std::vector<std::unordered_map<CodeKey, LinearCode, CodeKeyHash>> seen(threads);
    scan_vectors(c.field(), c.length(), ctx, vector_budget, [&](const GFVector& v, int t) {
        if (!admissible(v, f) || c.contains(v)) return;
        LinearCode d = LinearCode::from_generators(c.field(), c.length(), neighbor_rows(c, v));
        CodeKey key = d.key();
        seen[t].try_emplace(std::move(key), std::move(d));
    });
    for (int t = 1; t < threads; ++t)
        for (auto& [key, d] : seen[t]) seen[0].try_emplace(key, std::move(d));
    std::vector<LinearCode> out;
    out.reserve(seen[0].size());
    for (auto& [key, d] : seen[0]) out.push_back(std::move(d));
    sort_by_key(out);
    return out;
}

MultiplicityCensus multiplicity_census(const LinearCode& c, Family f, const ExecContext& ctx,
                                       std::uint64_t vector_budget) {
    require_member(c, f);
    const int threads = std::max(1, ctx.threads);
    struct Partial {
        std::unordered_map<CodeKey, std::uint64_t, CodeKeyHash> counts;
        std::uint64_t so = 0, so_in = 0;
    };
    std::vector<Partial> part(threads);
    scan_vectors(c.field(), c.length(), ctx, vector_budget, [&](const GFVector& v, int t) {
        if (!admissible(v, f)) return;
        ++part[t].so;
        if (c.contains(v)) {
            ++part[t].so_in;
            return;
        }
        ++part[t].counts[LinearCode::from_generators(c.field(), c.length(), neighbor_rows(c, v)).key()];
    });
    MultiplicityCensus out;
    for (int t = 1; t < threads; ++t) {
        for (const auto& [key, m] : part[t].counts) part[0].counts[key] += m;
    }
    for (const auto& p : part) {
        out.self_orthogonal += p.so;
        out.self_orthogonal_in_code += p.so_in;
    }
    out.eligible = out.self_orthogonal - out.self_orthogonal_in_code;
    out.neighbors = part[0].counts.size();
    if (!part[0].counts.empty()) {
        out.min_multiplicity = ~std::uint64_t{0};
        for (const auto& [key, m] : part[0].counts) {
            out.min_multiplicity = std::min(out.min_multiplicity, m);
            out.max_multiplicity = std::max(out.max_multiplicity, m);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms.

namespace {

void require_formula_family(Family f, int n) {
    if (f == Family::TypeII) throw DomainError("no closed-form counts for binary Type II codes");
    require_family_length(f, n);
}

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error(std::string(what) + ": division is not exact");
    return q;
}

}  // namespace

BigInt degree_formula(Family f, int n) {
    require_formula_family(f, n);
    switch (f) {
        case Family::TypeIII: return exact_div(pow_big(3, n / 2) - 1, 2, "degree");
        case Family::TypeIIIOnes: return exact_div(pow_big(3, n / 2 - 1) - 1, 2, "degree");
        default: return exact_div(2 * (pow_big(2, n) - 1), 3, "degree");
    }
}

BigInt vertex_count_formula(Family f, int n) {
    require_formula_family(f, n);
    BigInt p = 1;
    switch (f) {
        case Family::TypeIII:
            for (int i = 0; i <= n / 2 - 1; ++i) p *= pow_big(3, i) + 1;
            return p;
        case Family::TypeIIIOnes:
            for (int i = 1; i <= n / 2 - 2; ++i) p *= pow_big(3, i) + 1;
            return 2 * p;
        default:
            for (int i = 0; i <= n / 2 - 1; ++i) p *= pow_big(2, 2 * i + 1) + 1;
            return p;
    }
}

BigInt edge_count_formula(Family f, int n) {
    require_formula_family(f, n);
    BigInt p = 1;
    switch (f) {
        case Family::TypeIII:
            for (int i = 1; i <= n / 2 - 1; ++i) p *= pow_big(3, i) + 1;
            return exact_div(p * (pow_big(3, n / 2) - 1), 2, "edges");
        case Family::TypeIIIOnes:
            for (int i = 1; i <= n / 2 - 2; ++i) p *= pow_big(3, i) + 1;
            return exact_div(p * (pow_big(3, n / 2 - 1) - 1), 2, "edges");
        default:
            for (int i = 1; i <= n / 2 - 1; ++i) p *= pow_big(2, 2 * i + 1) + 1;
            return p * (pow_big(2, n) - 1);
    }
}

int max_distance(Family f, int n) {
    require_family_length(f, n);
    return f == Family::TypeIIIOnes ? n / 2 - 1 : n / 2;
}

BigInt k_neighbor_count_formula(Family f, int n, int k) {
    require_formula_family(f, n);
    if (k < 0 || k > max_distance(f, n))
        throw DomainError("k = " + std::to_string(k) + " outside [0, " + std::to_string(max_distance(f, n)) + "]");
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        switch (f) {
            case Family::TypeIII:
                num *= pow_big(3, n - 1 - i) - pow_big(3, n / 2 - 1);
                den *= pow_big(3, n / 2) - pow_big(3, n / 2 - 1 - i);
                break;
            case Family::TypeIIIOnes:
                num *= pow_big(3, n - 2 - i) - pow_big(3, n / 2 - 1);
                den *= pow_big(3, n / 2) - pow_big(3, n / 2 - 1 - i);
                break;
            default:
                num *= pow_big(2, 2 * n - 1 - 2 * i) - pow_big(2, n - 1);
                den *= pow_big(2, n) - pow_big(2, n - 2 - 2 * i);
                break;
        }
    }
    return exact_div(num, den, "k-neighbor count");
}

BigInt eligible_count_formula(Family f, int n) {
    require_formula_family(f, n);
    switch (f) {
        case Family::TypeIII: return pow_big(3, n - 1) - pow_big(3, n / 2 - 1);
        case Family::TypeIIIOnes: return pow_big(3, n - 2) - pow_big(3, n / 2 - 1);
        default: return pow_big(2, 2 * n - 1) - pow_big(2, n - 1);
    }
}

BigInt multiplicity_formula(Family f, int n) {
    require_formula_family(f, n);
    const unsigned long q = static_cast<unsigned long>(field_order(family_field(f)));
    return (q - 1) * pow_big(q, n / 2 - 1);
}

CountReport census_identity(Family f, int n) {
    CountReport r;
    r.label = "sum_k L_k = vertex count";
    r.predicted = vertex_count_formula(f, n);
    BigInt sum = 0;
    for (int k = 0; k <= max_distance(f, n); ++k) sum += k_neighbor_count_formula(f, n, k);
    r.observed = sum;
    return r;
}

// ---------------------------------------------------------------------------
// Fixtures.

namespace {

LinearCode ternary_block() {  // [4,2] Type III code
    const std::vector<GFVector> rows = {GFVector::parse(Field::F3, "1011"), GFVector::parse(Field::F3, "0112")};
    return LinearCode::from_generators(rows);
}

LinearCode ternary_block_far() {  // meets ternary_block() in {0}
    const std::vector<GFVector> rows = {GFVector::parse(Field::F3, "1022"), GFVector::parse(Field::F3, "0121")};
    return LinearCode::from_generators(rows);
}

LinearCode quaternary_block() {
    const std::vector<GFVector> rows = {GFVector::parse(Field::F4, "1 1")};
    return LinearCode::from_generators(rows);
}

LinearCode quaternary_block_far() {
    const std::vector<GFVector> rows = {GFVector::parse(Field::F4, "1 w")};
    return LinearCode::from_generators(rows);
}

// Extended ternary Golay code [I | S], rescaled coordinatewise so that a
// weight-12 codeword becomes the all-ones vector.
LinearCode ternary_golay_with_ones() {
    static constexpr std::array<const char*, 6> s = {"011111", "101221", "110122",
                                                     "121012", "122101", "112210"};
    std::vector<GFVector> rows;
    for (int i = 0; i < 6; ++i) {
        std::string r(6, '0');
        r[static_cast<std::size_t>(i)] = '1';
        rows.push_back(GFVector::parse(Field::F3, r + s[static_cast<std::size_t>(i)]));
    }
    const LinearCode golay = LinearCode::from_generators(rows);
    std::optional<GFVector> full;
    for_each_codeword(golay, [&](const GFVector& w) {
        if (!full && w.weight() == 12) full = w;
    });
    if (!full) throw std::logic_error("ternary Golay code has no weight-12 word");
    // Over F3 every nonzero scalar squares to 1, so scaling by w itself maps w to 1.
    return scale_coordinates(golay, full->elements());
}

std::vector<LinearCode> copies(const LinearCode& c, int count) { return std::vector<LinearCode>(count, c); }

}  // namespace

LinearCode seed_code(Family f, int n) {
    require_family_length(f, n);
    switch (f) {
        case Family::TypeII: return standard_code(StandardCode::DnPlus, n);
        case Family::TypeIII: return direct_sum(copies(ternary_block(), n / 4));
        case Family::TypeIIIOnes: return direct_sum(copies(ternary_golay_with_ones(), n / 12));
        case Family::TypeIV: return direct_sum(copies(quaternary_block(), n / 2));
    }
    return {};
}

std::pair<LinearCode, LinearCode> far_pair(Family f, int n) {
    require_family_length(f, n);
    switch (f) {
        case Family::TypeIII:
            return {direct_sum(copies(ternary_block(), n / 4)), direct_sum(copies(ternary_block_far(), n / 4))};
        case Family::TypeIV:
            return {direct_sum(copies(quaternary_block(), n / 2)), direct_sum(copies(quaternary_block_far(), n / 2))};
        default: throw DomainError("no direct-sum witness pair for " + std::string(family_name(f)));
    }
}

}  // namespace sdn
