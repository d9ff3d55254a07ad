#include "sumset/enclosure.hpp"

#include "sumset/error.hpp"

namespace sumset {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Verdict verdict_of(bool provable) { return provable ? Verdict::holds : Verdict::fails; }

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }
Enclosure operator+(const Rational& c, const Enclosure& a) { return {c + a.lo, c + a.hi}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Enclosure r{p[0], p[0]};
  for (const auto& v : p) {
    if (v < r.lo) r.lo = v;
    if (v > r.hi) r.hi = v;
  }
  return r;
}

Enclosure operator*(const Rational& c, const Enclosure& a) {
  if (c >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

namespace {

Rational dyadic(const Integer& m, unsigned bits) {
  Integer den = 1;
  den <<= bits;
  return make_rational(m, den);
}

Rational round_down(const Rational& q, unsigned bits) {
  Rational scaled = q;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), bits);
  return dyadic(floor(scaled), bits);
}

Rational round_up(const Rational& q, unsigned bits) {
  Rational scaled = q;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), bits);
  return dyadic(ceil(scaled), bits);
}

// 2*atanh(z) for 0 <= z <= 1/3, i.e. log((1+z)/(1-z)).
Enclosure two_atanh(const Rational& z, unsigned bits) {
  const unsigned work = bits + 32;
  const Rational z2_lo = round_down(z * z, work);
  const Rational z2_hi = round_up(z * z, work);
  Rational power_lo = round_down(z, work);
  Rational power_hi = round_up(z, work);
  Rational sum_lo = 0;
  Rational sum_hi = 0;
  Rational tail_limit = dyadic(Integer(1), bits + 4);
  for (unsigned long j = 0;; ++j) {
    const unsigned long odd = 2 * j + 1;
    sum_lo += round_down(power_lo / odd, work);
    sum_hi += round_up(power_hi / odd, work);
    power_lo = round_down(power_lo * z2_lo, work);
    power_hi = round_up(power_hi * z2_hi, work);
    // Remaining terms are bounded by power/(odd+2) * 1/(1-z^2) <= power * 9/8.
    Rational tail = power_hi * make_rational(9, 8);
    if (tail <= tail_limit) {
      sum_hi += tail;
      break;
    }
  }
  return {round_down(2 * sum_lo, bits), round_up(2 * sum_hi, bits)};
}

}  // namespace

Enclosure log_enclosure(const Rational& x, unsigned bits) {
  if (x <= 0) throw Error("logarithm of a nonpositive number");
  if (x == 1) return Enclosure::exact(0);
  // x = 2^e * y with 1 <= y < 2.
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  auto scaled = [&](long shift) {
    Rational y = x;
    if (shift >= 0) mpq_div_2exp(y.get_mpq_t(), y.get_mpq_t(), static_cast<unsigned long>(shift));
    else mpq_mul_2exp(y.get_mpq_t(), y.get_mpq_t(), static_cast<unsigned long>(-shift));
    return y;
  };
  Rational y = scaled(e);
  while (y < 1) y = scaled(--e);
  while (y >= 2) y = scaled(++e);

  const unsigned work = bits + 16 + static_cast<unsigned>(mpz_sizeinbase(Integer(e < 0 ? -e : e).get_mpz_t(), 2));
  Enclosure ln2 = two_atanh(make_rational(1, 3), work);
  // z = (y-1)/(y+1) lies in [0, 1/3).
  Enclosure lny = y == 1 ? Enclosure::exact(0) : two_atanh((y - 1) / (y + 1), work);
  Enclosure r = Rational(e) * ln2 + lny;
  return {round_down(r.lo, bits), round_up(r.hi, bits)};
}

Verdict compare_less(const Enclosure& lhs, const Enclosure& rhs) {
  if (lhs.hi < rhs.lo) return Verdict::holds;
  if (lhs.lo >= rhs.hi) return Verdict::fails;
  return Verdict::indeterminate;
}

Verdict compare_less_equal(const Enclosure& lhs, const Enclosure& rhs) {
  if (lhs.hi <= rhs.lo) return Verdict::holds;
  if (lhs.lo > rhs.hi) return Verdict::fails;
  return Verdict::indeterminate;
}

}  // namespace sumset
