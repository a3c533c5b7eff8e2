#ifndef RTL_EXACTNUM_HH
#define RTL_EXACTNUM_HH

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rtl {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
Rational make_rational(const BigInt & num, const BigInt & den);

std::string to_string(const BigInt & value);
std::string to_string(const Rational & value);

BigInt pow(const BigInt & base, unsigned long exponent);

/// One factor base^exponent of a PowerProduct.
struct PowerFactor
{
    BigInt base;
    Rational exponent;

    bool operator==(const PowerFactor &) const = default;
};

/// Size limit for the exact comparison path. The limit applies to each of
/// the two big integers formed when exponent denominators are cleared.
struct CompareBudget
{
    std::size_t max_bits = 1'000'000;
    bool fast_path = true;
};

/// Exact positive real of the form prod base_i^(p_i/q_i) with integer bases >= 1.
/// Exponents may be negative. The canonical form keeps factors sorted by base,
/// with equal bases merged and base 1 / exponent 0 dropped, so structural
/// equality of canonical forms implies equal values.
class PowerProduct
{
public:
    PowerProduct() = default;
    PowerProduct(const BigInt & integer);
    PowerProduct(long integer) : PowerProduct(BigInt(integer)) {}

    static PowerProduct power(const BigInt & base, const Rational & exponent);

    PowerProduct & operator*=(const PowerProduct & other);
    friend PowerProduct operator*(PowerProduct a, const PowerProduct & b) { return a *= b; }

    PowerProduct inverse() const;
    PowerProduct raised(const Rational & exponent) const;

    const std::vector<PowerFactor> & factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }

    /// Natural log of the value in long double precision.
    long double log_estimate() const;

    /// e.g. "3^(4/3) * 2^(1/6)"; the empty product renders as "1".
    std::string to_string() const;

    bool operator==(const PowerProduct &) const = default;

private:
    void canonicalize();

    std::vector<PowerFactor> factors_;
};

std::strong_ordering pp_compare(const PowerProduct & a, const PowerProduct & b,
        const CompareBudget & budget = {});

/// Largest integer N with N <= x.
BigInt pp_floor(const PowerProduct & x, const CompareBudget & budget = {});

/// pp_floor(x) + 1, which is also the right answer when x is an integer.
BigInt least_integer_greater(const PowerProduct & x, const CompareBudget & budget = {});

bool pp_is_integer(const PowerProduct & x, const CompareBudget & budget = {});

} // namespace rtl

#endif // RTL_EXACTNUM_HH
