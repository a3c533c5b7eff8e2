#include <rtl/exactnum.hh>
#include <rtl/errors.hh>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtl {

Rational make_rational(const BigInt & num, const BigInt & den)
{
    if (den == 0)
        throw ContractViolation("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const BigInt & value)
{
    return value.get_str();
}

std::string to_string(const Rational & value)
{
    return value.get_str();
}

BigInt pow(const BigInt & base, unsigned long exponent)
{
    BigInt result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
    return result;
}

namespace {

long double log_of(const BigInt & value)
{
    if (value.fits_ulong_p())
        return std::log(static_cast<long double>(value.get_ui()));
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(static_cast<long double>(mant)) + static_cast<long double>(exp2) * std::log(2.0L);
}

long double to_long_double(const Rational & q)
{
    return static_cast<long double>(q.get_d());
}

BigInt lcm(const BigInt & a, const BigInt & b)
{
    BigInt result;
    mpz_lcm(result.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return result;
}

} // namespace

PowerProduct::PowerProduct(const BigInt & integer)
{
    if (integer < 1)
        throw ContractViolation("PowerProduct needs a positive integer, got " + integer.get_str());
    factors_.push_back({integer, Rational(1)});
    canonicalize();
}

PowerProduct PowerProduct::power(const BigInt & base, const Rational & exponent)
{
    if (base < 1)
        throw ContractViolation("PowerProduct base must be >= 1, got " + base.get_str());
    PowerProduct result;
    result.factors_.push_back({base, exponent});
    result.factors_.back().exponent.canonicalize();
    result.canonicalize();
    return result;
}

void PowerProduct::canonicalize()
{
    std::sort(factors_.begin(), factors_.end(),
            [](const PowerFactor & a, const PowerFactor & b) { return a.base < b.base; });
    std::vector<PowerFactor> merged;
    for (auto & f : factors_) {
        if (! merged.empty() && merged.back().base == f.base)
            merged.back().exponent += f.exponent;
        else
            merged.push_back(f);
    }
    std::erase_if(merged, [](const PowerFactor & f) { return f.base == 1 || f.exponent == 0; });
    factors_ = std::move(merged);
}

PowerProduct & PowerProduct::operator*=(const PowerProduct & other)
{
    factors_.insert(factors_.end(), other.factors_.begin(), other.factors_.end());
    canonicalize();
    return *this;
}

PowerProduct PowerProduct::inverse() const
{
    return raised(Rational(-1));
}

PowerProduct PowerProduct::raised(const Rational & exponent) const
{
    PowerProduct result = *this;
    for (auto & f : result.factors_)
        f.exponent *= exponent;
    result.canonicalize();
    return result;
}

long double PowerProduct::log_estimate() const
{
    long double sum = 0.0L;
    for (auto & f : factors_)
        sum += to_long_double(f.exponent) * log_of(f.base);
    return sum;
}

std::string PowerProduct::to_string() const
{
    if (factors_.empty())
        return "1";
    std::string out;
    // largest base first reads like the formulas it comes from
    for (auto f = factors_.rbegin(); f != factors_.rend(); ++f) {
        if (! out.empty())
            out += " * ";
        out += f->base.get_str();
        if (f->exponent != 1) {
            if (f->exponent.get_den() == 1 && f->exponent > 0)
                out += "^" + f->exponent.get_str();
            else
                out += "^(" + f->exponent.get_str() + ")";
        }
    }
    return out;
}

std::strong_ordering pp_compare(const PowerProduct & a, const PowerProduct & b, const CompareBudget & budget)
{
    PowerProduct quotient = a * b.inverse();
    if (quotient.is_one())
        return std::strong_ordering::equal;

    if (budget.fast_path) {
        long double magnitude = 0.0L;
        for (auto & f : quotient.factors())
            magnitude += std::fabs(to_long_double(f.exponent)) * log_of(f.base);
        long double estimate = quotient.log_estimate();
        if (std::fabs(estimate) > 1e-12L * (1.0L + magnitude))
            return estimate < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    BigInt common = 1;
    for (auto & f : quotient.factors())
        common = lcm(common, f.exponent.get_den());

    struct Term { const BigInt * base; BigInt power; };
    std::vector<Term> up, down;
    long double up_bits = 0.0L, down_bits = 0.0L;
    for (auto & f : quotient.factors()) {
        BigInt n = f.exponent.get_num() * (common / f.exponent.get_den());
        long double bits = std::fabs(n.get_d()) * log_of(f.base) / std::log(2.0L);
        if (n > 0) {
            up.push_back({&f.base, n});
            up_bits += bits;
        }
        else {
            down.push_back({&f.base, -n});
            down_bits += bits;
        }
    }
    long double needed = std::max(up_bits, down_bits);
    if (needed > static_cast<long double>(budget.max_bits))
        throw ResourceError("exact comparison of " + a.to_string() + " against " + b.to_string()
                + " needs about " + std::to_string(static_cast<unsigned long long>(needed))
                + " bits, budget is " + std::to_string(budget.max_bits));

    auto product = [](const std::vector<Term> & terms) {
        BigInt result = 1;
        for (auto & t : terms)
            result *= pow(*t.base, t.power.get_ui());
        return result;
    };
    BigInt lhs = product(up), rhs = product(down);
    int c = cmp(lhs, rhs);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

BigInt pp_floor(const PowerProduct & x, const CompareBudget & budget)
{
    auto at_most_x = [&](const BigInt & n) {
        return n < 1 || pp_compare(PowerProduct(n), x, budget) != std::strong_ordering::greater;
    };

    long double log2x = x.log_estimate() / std::log(2.0L);
    BigInt guess = 0;
    if (log2x < 0.0L)
        guess = 0;
    else if (log2x < 62.0L)
        guess = static_cast<unsigned long>(std::floor(std::exp2(log2x)));
    else {
        long shift = static_cast<long>(std::floor(log2x)) - 62;
        auto mantissa = static_cast<unsigned long>(std::exp2(log2x - static_cast<long double>(shift)));
        guess = mantissa;
        mpz_mul_2exp(guess.get_mpz_t(), guess.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    }

    BigInt step = guess >> 30;
    if (step < 1)
        step = 1;
    BigInt lo = guess - step;
    if (lo < 0)
        lo = 0;
    BigInt width = step;
    while (! at_most_x(lo)) {
        lo -= width;
        if (lo < 0)
            lo = 0;
        width *= 2;
    }
    width = step;
    BigInt hi = guess + step;
    while (at_most_x(hi)) {
        hi += width;
        width *= 2;
    }
    // lo <= x < hi
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (at_most_x(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

BigInt least_integer_greater(const PowerProduct & x, const CompareBudget & budget)
{
    return pp_floor(x, budget) + 1;
}

bool pp_is_integer(const PowerProduct & x, const CompareBudget & budget)
{
    BigInt f = pp_floor(x, budget);
    return f >= 1 && pp_compare(PowerProduct(f), x, budget) == std::strong_ordering::equal;
}

} // namespace rtl
