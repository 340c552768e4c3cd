#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sdn {

using BigInt = mpz_class;

inline BigInt pow_big(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline bool fits_u64(const BigInt& v) {
    return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, v.get_mpz_t());
    return out;
}

}  // namespace sdn
