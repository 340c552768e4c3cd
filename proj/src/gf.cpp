#include "sdn/gf.hpp"

#include <cctype>
#include <sstream>

namespace sdn {

std::string_view field_name(Field f) noexcept {
    switch (f) {
        case Field::F2: return "F2";
        case Field::F3: return "F3";
        case Field::F4: return "F4";
    }
    return "?";
}

Field parse_field(std::string_view name) {
    if (name == "F2" || name == "2") return Field::F2;
    if (name == "F3" || name == "3") return Field::F3;
    if (name == "F4" || name == "4") return Field::F4;
    throw UsageError("unknown field '" + std::string(name) + "'");
}

std::string gf::element_to_string(Field f, FieldElement a) {
    if (f == Field::F4) {
        switch (a) {
            case 0: return "0";
            case 1: return "1";
            case 2: return "w";
            default: return "w2";
        }
    }
    return std::string(1, static_cast<char>('0' + a));
}

GFVector::GFVector(Field field, int length) : field_(field) {
    if (length <= 0 || length > kMaxLength)
        throw UsageError("vector length must be in [1, 64], got " + std::to_string(length));
    length_ = static_cast<std::uint8_t>(length);
}

GFVector GFVector::from_planes(Field field, int length, std::uint64_t p0, std::uint64_t p1) {
    GFVector v(field, length);
    const std::uint64_t m = length_mask(length);
    v.p0_ = p0 & m;
    v.p1_ = field == Field::F2 ? 0 : (p1 & m);
    if (field == Field::F3 && (v.p0_ & v.p1_) != 0)
        throw UsageError("F3 planes overlap: not a valid encoding");
    return v;
}

GFVector GFVector::from_elements(Field field, std::span<const FieldElement> coords) {
    GFVector v(field, static_cast<int>(coords.size()));
    const int q = field_order(field);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const FieldElement c = coords[i];
        if (c >= q)
            throw UsageError("coordinate value " + std::to_string(c) + " is not an element of " +
                             std::string(field_name(field)));
        v.p0_ |= std::uint64_t{c & 1u} << i;
        v.p1_ |= std::uint64_t{(c >> 1) & 1u} << i;
    }
    return v;
}

GFVector GFVector::all_ones(Field field, int length) {
    return from_planes(field, length, length_mask(length), 0);
}

GFVector GFVector::parse(Field field, std::string_view text) {
    std::vector<FieldElement> coords;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == ',' || c == '\t') {
            ++i;
            continue;
        }
        if (field == Field::F4 && (c == 'w' || c == 'W')) {
            if (i + 1 < text.size() && text[i + 1] == '2') {
                coords.push_back(3);
                i += 2;
            } else {
                coords.push_back(2);
                i += 1;
            }
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw UsageError("unexpected character '" + std::string(1, c) + "' in vector '" +
                             std::string(text) + "'");
        const int d = c - '0';
        if (d >= field_order(field) || (field == Field::F4 && d > 1))
            throw UsageError("digit '" + std::string(1, c) + "' is not an element of " +
                             std::string(field_name(field)));
        coords.push_back(static_cast<FieldElement>(d));
        ++i;
    }
    if (coords.empty()) throw UsageError("empty vector");
    return from_elements(field, coords);
}

GFVector GFVector::with(int i, FieldElement value) const {
    if (i < 0 || i >= length_) throw UsageError("coordinate index out of range");
    if (value >= field_order(field_)) throw UsageError("value is not a field element");
    GFVector r = *this;
    const std::uint64_t bit = std::uint64_t{1} << i;
    r.p0_ = (r.p0_ & ~bit) | ((value & 1u) ? bit : 0);
    r.p1_ = (r.p1_ & ~bit) | ((value & 2u) ? bit : 0);
    return r;
}

std::vector<FieldElement> GFVector::elements() const {
    std::vector<FieldElement> out(length_);
    for (int i = 0; i < length_; ++i) out[i] = (*this)[i];
    return out;
}

std::string GFVector::to_string() const {
    std::string out;
    const bool spaced = field_ == Field::F4;
    for (int i = 0; i < length_; ++i) {
        if (spaced && i > 0) out += ' ';
        out += gf::element_to_string(field_, (*this)[i]);
    }
    return out;
}

void throw_incompatible(const GFVector& u, const GFVector& v) {
    std::ostringstream os;
    os << "vector mismatch: " << field_name(u.field()) << "^" << u.length() << " vs "
       << field_name(v.field()) << "^" << v.length();
    throw UsageError(os.str());
}

BigInt count_self_orthogonal(Field field, int n, OnesConstraint constraint) {
    if (n <= 0) throw DomainError("length must be positive");
    if (field == Field::F3) {
        const BigInt half = pow_big(3, n / 2);
        const BigInt half_minus = pow_big(3, n / 2 - 1);
        if (constraint == OnesConstraint::None) {
            if (n % 4 != 0) throw DomainError("F3 self-orthogonal count needs n = 0 mod 4");
            return pow_big(3, n - 1) + half - half_minus;
        }
        if (n % 12 != 0)
            throw DomainError("F3 count orthogonal to the all-ones vector needs n = 0 mod 12");
        return pow_big(3, n - 2) + half - half_minus;
    }
    if (field == Field::F4 && constraint == OnesConstraint::None) {
        if (n % 2 != 0) throw DomainError("F4 self-orthogonal count needs n even");
        return pow_big(2, n - 1) * (pow_big(2, n) + 1);
    }
    throw DomainError("no closed form for this (field, constraint) combination");
}

}  // namespace sdn
