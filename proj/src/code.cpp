#include "sdn/code.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sdn {

namespace {

std::uint64_t checked_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (~std::uint64_t{0}) / base)
            throw ResourceError("code size q^k does not fit in 64 bits");
        r *= base;
    }
    return r;
}

}  // namespace

LinearCode LinearCode::from_generators(Field field, int length, std::span<const GFVector> vectors) {
    if (length <= 0) throw UsageError("code length must be positive");
    if (length > kMaxLength) throw UsageError("code length exceeds 64");
    LinearCode c;
    c.field_ = field;
    c.length_ = length;

    std::vector<GFVector> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.field() != field || v.length() != length)
            throw UsageError("generator does not match code field/length");
        if (!v.is_zero()) rows.push_back(v);
    }

    int rank = 0;
    for (int col = 0; col < length && rank < static_cast<int>(rows.size()); ++col) {
        int sel = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r][col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        rows[rank] = scale(gf::inv(field, rows[rank][col]), rows[rank]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            const FieldElement f = rows[r][col];
            if (f != 0) rows[r] = sub(rows[r], scale(f, rows[rank]));
        }
        c.pivots_.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    c.rows_ = std::move(rows);
    return c;
}

LinearCode LinearCode::from_generators(std::span<const GFVector> vectors) {
    if (vectors.empty()) throw UsageError("cannot infer field/length from an empty generator list");
    return from_generators(vectors.front().field(), vectors.front().length(), vectors);
}

LinearCode LinearCode::zero(Field field, int length) {
    return from_generators(field, length, std::span<const GFVector>{});
}

LinearCode LinearCode::full_space(Field field, int length) {
    std::vector<GFVector> rows;
    for (int i = 0; i < length; ++i) rows.push_back(GFVector(field, length).with(i, 1));
    return from_generators(field, length, rows);
}

std::uint64_t LinearCode::size() const {
    return checked_pow(static_cast<std::uint64_t>(field_order(field_)), dimension());
}

CodeKey LinearCode::key() const {
    CodeKey k;
    k.reserve(1 + 2 * rows_.size());
    k.push_back((static_cast<std::uint64_t>(field_) << 56) | (static_cast<std::uint64_t>(length_) << 48) |
                rows_.size());
    for (const auto& r : rows_) {
        k.push_back(r.plane0());
        k.push_back(r.plane1());
    }
    return k;
}

GFVector LinearCode::reduce(const GFVector& v) const {
    if (v.field() != field_ || v.length() != length_)
        throw UsageError("vector does not match code field/length");
    GFVector r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const FieldElement f = r[pivots_[i]];
        if (f != 0) r = sub(r, scale(f, rows_[i]));
    }
    return r;
}

GFVector LinearCode::encode(std::span<const FieldElement> message) const {
    if (message.size() != rows_.size()) throw UsageError("message length must equal the dimension");
    GFVector w(field_, length_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (message[i] != 0) w = add(w, scale(message[i], rows_[i]));
    return w;
}

LinearCode dual(const LinearCode& c) {
    const Field f = c.field();
    const int n = c.length();
    std::vector<bool> is_pivot(n, false);
    for (int p : c.pivots()) is_pivot[p] = true;

    // Euclidean dual of an RREF code: one basis vector per free column.
    std::vector<GFVector> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        GFVector z = GFVector(f, n).with(col, 1);
        for (int i = 0; i < c.dimension(); ++i) {
            const FieldElement a = c.generators()[i][col];
            if (a != 0) z = z.with(c.pivots()[i], gf::neg(f, a));
        }
        // The Hermitian dual is the conjugate of the Euclidean one.
        basis.push_back(conjugate(z));
    }
    return LinearCode::from_generators(f, n, basis);
}

bool is_self_orthogonal(const LinearCode& c) {
    const auto& g = c.generators();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j)
            if (inner_product(g[i], g[j]) != 0) return false;
    return true;
}

bool is_self_dual(const LinearCode& c) {
    return 2 * c.dimension() == c.length() && is_self_orthogonal(c);
}

namespace {

bool small_enough_to_scan(const LinearCode& c) {
    const double log_size = c.dimension() * std::log2(static_cast<double>(field_order(c.field())));
    return log_size <= 16.0 + 1e-9;
}

bool all_weights_divisible(const LinearCode& c, int d) {
    bool ok = true;
    for_each_codeword(c, [&](const GFVector& w) {
        if (w.weight() % d != 0) ok = false;
    });
    return ok;
}

}  // namespace

bool is_type_II(const LinearCode& c) {
    if (c.field() != Field::F2 || !is_self_dual(c)) return false;
    if (small_enough_to_scan(c)) return all_weights_divisible(c, 4);
    // In a self-orthogonal binary code, wt(u+v) = wt(u) + wt(v) - 2|u & v| with |u & v|
    // even, so doubly-even generators force every codeword to be doubly even.
    return std::all_of(c.generators().begin(), c.generators().end(),
                       [](const GFVector& g) { return g.weight() % 4 == 0; });
}

bool is_type_III(const LinearCode& c) {
    if (c.field() != Field::F3 || !is_self_dual(c)) return false;
    if (small_enough_to_scan(c)) return all_weights_divisible(c, 3);
    return true;
}

bool is_type_IV(const LinearCode& c) {
    if (c.field() != Field::F4 || !is_self_dual(c)) return false;
    if (small_enough_to_scan(c)) return all_weights_divisible(c, 2);
    return true;
}

bool contains_all_ones(const LinearCode& c) {
    return c.contains(GFVector::all_ones(c.field(), c.length()));
}

LinearCode span(const LinearCode& c, const LinearCode& d) {
    if (c.field() != d.field() || c.length() != d.length())
        throw UsageError("span requires codes of equal field and length");
    std::vector<GFVector> rows = c.generators();
    rows.insert(rows.end(), d.generators().begin(), d.generators().end());
    return LinearCode::from_generators(c.field(), c.length(), rows);
}

LinearCode intersection(const LinearCode& c, const LinearCode& d) {
    if (c.field() != d.field() || c.length() != d.length())
        throw UsageError("intersection requires codes of equal field and length");
    // (C^perp + D^perp)^perp = C cap D for any nondegenerate form.
    return dual(span(dual(c), dual(d)));
}

int intersection_dimension(const LinearCode& c, const LinearCode& d) {
    return c.dimension() + d.dimension() - span(c, d).dimension();
}

LinearCode direct_sum(const LinearCode& c, const LinearCode& d) {
    if (c.field() != d.field()) throw UsageError("direct sum requires codes over the same field");
    const int n = c.length() + d.length();
    if (n > kMaxLength) throw UsageError("direct sum length exceeds 64");
    std::vector<GFVector> rows;
    for (const auto& g : c.generators())
        rows.push_back(GFVector::from_planes(c.field(), n, g.plane0(), g.plane1()));
    for (const auto& g : d.generators())
        rows.push_back(GFVector::from_planes(c.field(), n, g.plane0() << c.length(),
                                             g.plane1() << c.length()));
    return LinearCode::from_generators(c.field(), n, rows);
}

LinearCode direct_sum(std::span<const LinearCode> parts) {
    if (parts.empty()) throw UsageError("direct sum of nothing");
    LinearCode acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i]);
    return acc;
}

LinearCode scale_coordinates(const LinearCode& c, std::span<const FieldElement> factors) {
    if (static_cast<int>(factors.size()) != c.length()) throw UsageError("one factor per coordinate");
    std::vector<GFVector> rows;
    for (const auto& g : c.generators()) {
        std::vector<FieldElement> e = g.elements();
        for (int i = 0; i < c.length(); ++i) {
            if (factors[i] == 0) throw UsageError("coordinate factors must be nonzero");
            e[i] = gf::mul(c.field(), e[i], factors[i]);
        }
        rows.push_back(GFVector::from_elements(c.field(), e));
    }
    return LinearCode::from_generators(c.field(), c.length(), rows);
}

LinearCode standard_code(StandardCode name, int n) {
    if (name == StandardCode::E8) return standard_code(StandardCode::DnPlus, 8);
    if (n < 4 || n % 2 != 0 || n > kMaxLength)
        throw DomainError("d_n needs even n in [4, 64], got " + std::to_string(n));
    if (name == StandardCode::DnPlus && n % 8 != 0)
        throw DomainError("d_n^+ needs n = 0 mod 8, got " + std::to_string(n));

    // d_n: 1111 0..0, 1100 1100 0..0, ..., 1100..0011.
    std::vector<GFVector> rows;
    for (int pair = 1; pair < n / 2; ++pair) {
        const std::uint64_t bits = 0b11u | (std::uint64_t{0b11} << (2 * pair));
        rows.push_back(GFVector::from_planes(Field::F2, n, bits, 0));
    }
    if (name == StandardCode::DnPlus) {
        std::uint64_t glue = 0;
        for (int i = 0; i < n; i += 2) glue |= std::uint64_t{1} << i;
        rows.push_back(GFVector::from_planes(Field::F2, n, glue, 0));
    }
    return LinearCode::from_generators(Field::F2, n, rows);
}

StandardCode parse_standard_code(std::string_view name) {
    if (name == "d_n" || name == "dn" || name == "d") return StandardCode::Dn;
    if (name == "d_n_plus" || name == "dn+" || name == "dnplus" || name == "d+") return StandardCode::DnPlus;
    if (name == "e_8" || name == "e8") return StandardCode::E8;
    throw UsageError("unknown standard code '" + std::string(name) + "'");
}

unsigned additive_radix(Field f) noexcept { return f == Field::F3 ? 3u : 2u; }

std::vector<GFVector> additive_basis(const LinearCode& c) {
    if (c.field() != Field::F4) return c.generators();
    std::vector<GFVector> basis;
    basis.reserve(2 * c.generators().size());
    for (const auto& g : c.generators()) {
        basis.push_back(g);
        basis.push_back(scale(2, g));  // w * g
    }
    return basis;
}

GFVector gray_codeword(const LinearCode& c, std::uint64_t index) {
    const unsigned radix = additive_radix(c.field());
    const std::vector<GFVector> basis = additive_basis(c);
    std::vector<unsigned> digits(basis.size(), 0);
    for (auto& d : digits) {
        d = static_cast<unsigned>(index % radix);
        index /= radix;
    }
    GFVector w(c.field(), c.length());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const unsigned next = i + 1 < basis.size() ? digits[i + 1] : 0;
        const unsigned g = (digits[i] + radix - next) % radix;
        for (unsigned s = 0; s < g; ++s) w = add(w, basis[i]);
    }
    return w;
}

std::vector<std::uint64_t> weight_distribution(const LinearCode& c, const ExecContext& ctx,
                                               std::uint64_t budget) {
    const std::uint64_t total = c.size();
    if (total > budget)
        throw ResourceError("weight distribution needs " + std::to_string(total) +
                            " codewords, budget is " + std::to_string(budget));
    const int n = c.length();
    const int threads = std::max(1, ctx.threads);
    std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(n + 1, 0));
    const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, 256));

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t ch = 0; ch < static_cast<std::int64_t>(chunks); ++ch) {
        const std::uint64_t begin = total * static_cast<std::uint64_t>(ch) / chunks;
        const std::uint64_t end = total * static_cast<std::uint64_t>(ch + 1) / chunks;
        auto& hist = partial[current_thread()];
        for_each_codeword(c, begin, end, [&](const GFVector& w) { ++hist[w.weight()]; });
    }

    std::vector<std::uint64_t> dist(n + 1, 0);
    for (const auto& h : partial)
        for (int w = 0; w <= n; ++w) dist[w] += h[w];
    return dist;
}

std::vector<std::uint64_t> weight_distribution_reference(const LinearCode& c) {
    const std::uint64_t total = c.size();
    const int q = field_order(c.field());
    std::vector<std::uint64_t> dist(c.length() + 1, 0);
    std::vector<FieldElement> msg(c.dimension(), 0);
    for (std::uint64_t m = 0; m < total; ++m) {
        std::uint64_t x = m;
        for (auto& d : msg) {
            d = static_cast<FieldElement>(x % q);
            x /= q;
        }
        ++dist[c.encode(msg).weight()];
    }
    return dist;
}

CodeFingerprint fingerprint(const LinearCode& c, const ExecContext& ctx) {
    return CodeFingerprint{weight_distribution(c, ctx), std::nullopt};
}

nlohmann::json to_json(const LinearCode& c) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& g : c.generators()) rows.push_back(g.to_string());
    return {{"field", std::string(field_name(c.field()))}, {"length", c.length()}, {"generators", rows}};
}

LinearCode code_from_json(const nlohmann::json& j) {
    try {
        const Field f = parse_field(j.at("field").get<std::string>());
        const int n = j.at("length").get<int>();
        std::vector<GFVector> rows;
        for (const auto& r : j.at("generators")) {
            GFVector v = GFVector::parse(f, r.get<std::string>());
            if (v.length() != n) throw UsageError("generator length does not match 'length'");
            rows.push_back(v);
        }
        return LinearCode::from_generators(f, n, rows);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed code JSON: ") + e.what());
    }
}

std::string describe(const LinearCode& c) {
    std::ostringstream os;
    os << "[" << c.length() << ", " << c.dimension() << "] code over " << field_name(c.field());
    return os.str();
}

}  // namespace sdn
