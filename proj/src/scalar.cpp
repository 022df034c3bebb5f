#include "curlinv/scalar.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "curlinv/errors.hpp"

namespace curlinv {
namespace {

using i128 = __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
// Excluding INT64_MIN keeps negation and abs() total on the inline path.
constexpr i128 kMin = -kMax;

bool fits(i128 v) { return v >= kMin && v <= kMax; }

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<unsigned long>(u >> 64);
  const auto lo = static_cast<unsigned long>(u & 0xffffffffffffffffULL);
  mpz_class z = hi;
  z <<= 64;
  z += lo;
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Scalar::Scalar(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::kInternal, "zero denominator");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    assign_big(std::move(q));
  }
}

Scalar::Scalar(const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  assign_big(std::move(q));
}

void Scalar::assign_big(mpq_class value) {
  const mpz_class& n = value.get_num();
  const mpz_class& d = value.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(value));
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::kParseError, "empty scalar");
  mpq_class q;
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  auto strip_plus = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(0, 1);
    return part;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw Error(ErrorCode::kParseError, "malformed scalar '" + s + "'");
    q = mpq_class(mpz_class(strip_plus(s)));
  } else {
    const std::string p = s.substr(0, slash);
    const std::string d = s.substr(slash + 1);
    if (!valid_int(p) || !valid_int(d) || d[0] == '-' || d[0] == '+') {
      throw Error(ErrorCode::kParseError, "malformed scalar '" + s + "'");
    }
    mpz_class den(d);
    if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator in '" + s + "'");
    q = mpq_class(mpz_class(strip_plus(p)), den);
    q.canonicalize();
  }
  Scalar out;
  out.assign_big(std::move(q));
  return out;
}

bool Scalar::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Scalar::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

double Scalar::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Scalar::to_string() const {
  if (big_) {
    if (big_->get_den() == 1) return big_->get_num().get_str();
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (big_) {
    out.assign_big(mpq_class(-*big_));
  } else {
    out.num_ = -num_;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      const i128 s = static_cast<i128>(num_) + rhs.num_;
      if (fits(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    const i128 n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
    const i128 d = static_cast<i128>(den_) * rhs.den_;
    const i128 g = gcd128(n, d);
    const i128 rn = g > 1 ? n / g : n;
    const i128 rd = g > 1 ? d / g : d;
    if (fits(rn) && fits(rd)) {
      num_ = static_cast<std::int64_t>(rn);
      den_ = static_cast<std::int64_t>(rd);
      return *this;
    }
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (!big_ && !rhs.big_) {
    // Cross-reduce first so the product is already canonical.
    const i128 g1 = gcd128(num_, rhs.den_);
    const i128 g2 = gcd128(rhs.num_, den_);
    const i128 a = g1 > 1 ? num_ / g1 : num_;
    const i128 b = g2 > 1 ? rhs.num_ / g2 : rhs.num_;
    const i128 c = g2 > 1 ? den_ / g2 : den_;
    const i128 d = g1 > 1 ? rhs.den_ / g1 : rhs.den_;
    const i128 n = a * b;
    const i128 dd = c * d;
    if (fits(n) && fits(dd)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = n == 0 ? 1 : static_cast<std::int64_t>(dd);
      return *this;
    }
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::kInternal, "division by zero");
  if (!rhs.big_) {
    Scalar inv(rhs.den_, rhs.num_);
    return *this *= inv;
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a value that fits inline is never stored big
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) {
    const i128 l = static_cast<i128>(a.num_) * b.den_;
    const i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) { return os << value.to_string(); }

}  // namespace curlinv
