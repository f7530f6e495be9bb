#include "adhoc1d/ratio.hpp"

#include <cmath>
#include <cstdint>

#include "adhoc1d/network.hpp"

namespace adhoc1d {

Ratio::Ratio(double value) : value_(value), exact_(value) {
    exact_.canonicalize();
}

Ratio Ratio::from_double(double rho) {
    if (!std::isfinite(rho) || !(rho > 0.0))
        throw DomainError("ratio L/r must be finite and positive");
    return Ratio(rho);
}

Ratio Ratio::from_length_radius(double length, double radius) {
    if (!(length > 0.0) || !(radius > 0.0))
        throw DomainError("length and radius must be positive");
    return from_double(length / radius);
}

mpz_class Ratio::floor() const {
    mpz_class result;
    mpz_fdiv_q(result.get_mpz_t(), exact_.get_num_mpz_t(), exact_.get_den_mpz_t());
    return result;
}

double to_double_rounded(const mpq_class& value) {
    const int sign = sgn(value);
    if (sign == 0) return 0.0;

    mpz_class num = abs(value.get_num());
    mpz_class den = value.get_den();
    const long num_bits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    const long den_bits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));

    // Scale so the integer quotient carries 55 or 56 significant bits.
    const long shift = 55 - (num_bits - den_bits);
    if (shift >= 0)
        num <<= static_cast<mp_bitcnt_t>(shift);
    else
        den <<= static_cast<mp_bitcnt_t>(-shift);

    mpz_class quotient, remainder;
    mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

    // Append a sticky bit below the quotient; the hardware u64 -> double
    // conversion then rounds to nearest-even correctly.
    const std::uint64_t q = mpz_get_ui(quotient.get_mpz_t());
    const std::uint64_t with_sticky = (q << 1) | (remainder != 0 ? 1u : 0u);
    const double magnitude = std::ldexp(static_cast<double>(with_sticky),
                                        static_cast<int>(-(shift + 1)));
    return sign < 0 ? -magnitude : magnitude;
}

}  // namespace adhoc1d
