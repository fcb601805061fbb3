#include "sl2cert/rings.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <vector>

namespace sl2cert {

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

/// Decimal integer with optional leading sign.
mpz_class parse_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) {
    throw Error(Errc::ParseError, "expected an integer, got '" + std::string(s) + "'");
  }
  mpz_class n(std::string(digits), 10);
  return (!s.empty() && s.front() == '-') ? mpz_class(-n) : n;
}

std::uint64_t parse_u64(std::string_view s) {
  if (!all_digits(s) || s.size() > 19) {
    throw Error(Errc::ParseError, "expected a small non-negative integer, got '" + std::string(s) + "'");
  }
  return std::stoull(std::string(s));
}

bool is_squarefree(std::int64_t d) {
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- descriptor

RingDescriptor RingDescriptor::integers() { return RingDescriptor{}; }

RingDescriptor RingDescriptor::localized(std::uint64_t m) {
  if (m < 2 || m > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::InvalidRing, "Z[1/m] requires 2 <= m < 2^32, got " + std::to_string(m));
  }
  RingDescriptor r;
  r.kind_ = Kind::LocalizedIntegers;
  r.param_ = static_cast<std::int64_t>(m);
  std::uint64_t rest = m;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    r.primes_[r.nprimes_++] = static_cast<std::uint32_t>(p);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) r.primes_[r.nprimes_++] = static_cast<std::uint32_t>(rest);
  return r;
}

RingDescriptor RingDescriptor::quadratic(std::int64_t d) {
  if (d < 2 || d >= (std::int64_t{1} << 31) || !is_squarefree(d)) {
    throw Error(Errc::InvalidRing,
                "Z[sqrt(d)] requires squarefree 2 <= d < 2^31, got " + std::to_string(d));
  }
  RingDescriptor r;
  r.kind_ = Kind::QuadraticRing;
  r.param_ = d;
  return r;
}

RingDescriptor RingDescriptor::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s == "Z") return integers();
  if (s.size() > 3 && s.rfind("Z[", 0) == 0 && s.back() == ']') {
    std::string_view inner(s);
    inner = inner.substr(2, inner.size() - 3);
    if (inner.rfind("1/", 0) == 0) return localized(parse_u64(inner.substr(2)));
    if (inner.rfind("sqrt", 0) == 0) {
      inner.remove_prefix(4);
      if (inner.size() > 2 && inner.front() == '(' && inner.back() == ')') {
        inner = inner.substr(1, inner.size() - 2);
      }
      return quadratic(static_cast<std::int64_t>(parse_u64(inner)));
    }
  }
  throw Error(Errc::ParseError, "unrecognised ring '" + std::string(text) +
                                    "' (expected Z, Z[1/m] or Z[sqrtd])");
}

std::string RingDescriptor::to_string() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::LocalizedIntegers: return "Z[1/" + std::to_string(param_) + "]";
    case Kind::QuadraticRing: return "Z[sqrt" + std::to_string(param_) + "]";
  }
  return "?";
}

// ---------------------------------------------------------------- element

RingElement::RingElement(const RingDescriptor& ring) : ring_(ring) {}

RingElement RingElement::integer(const RingDescriptor& ring, const mpz_class& n) {
  RingElement x(ring);
  x.a_ = n;
  x.normalize();
  return x;
}

RingElement RingElement::fraction(const RingDescriptor& ring, const mpz_class& num,
                                  const mpz_class& den) {
  if (den == 0) throw Error(Errc::NotInRing, "zero denominator");
  mpz_class g = gcd(num, den);
  mpz_class n = num / g;
  mpz_class m = den / g;
  if (m < 0) {
    n = -n;
    m = -m;
  }
  RingElement x(ring);
  x.a_ = n;
  for (std::size_t i = 0; i < ring.primes().size(); ++i) {
    mpz_class p(ring.primes()[i]);
    x.exps_[i] = -static_cast<std::int64_t>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
  }
  if (m != 1) {
    throw Error(Errc::NotInRing, num.get_str() + "/" + den.get_str() + " is not an element of " +
                                     ring.to_string());
  }
  x.normalize();
  return x;
}

RingElement RingElement::quadratic(const RingDescriptor& ring, const mpz_class& a,
                                   const mpz_class& b) {
  if (!ring.is_quadratic()) {
    if (b != 0) throw Error(Errc::NotInRing, "sqrt term in " + ring.to_string());
    return integer(ring, a);
  }
  RingElement x(ring);
  x.a_ = a;
  x.b_ = b;
  return x;
}

void RingElement::normalize() {
  if (ring_.is_quadratic()) return;
  if (a_ == 0) {
    exps_.fill(0);
    return;
  }
  for (std::size_t i = 0; i < ring_.primes().size(); ++i) {
    mpz_class p(ring_.primes()[i]);
    exps_[i] += static_cast<std::int64_t>(mpz_remove(a_.get_mpz_t(), a_.get_mpz_t(), p.get_mpz_t()));
  }
}

bool RingElement::is_one() const {
  return a_ == 1 && b_ == 0 && std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

mpz_class RingElement::numerator() const {
  mpz_class n = a_;
  for (std::size_t i = 0; i < ring_.primes().size(); ++i) {
    if (exps_[i] > 0) {
      mpz_class pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), ring_.primes()[i], static_cast<unsigned long>(exps_[i]));
      n *= pw;
    }
  }
  return n;
}

mpz_class RingElement::denominator() const {
  mpz_class d = 1;
  for (std::size_t i = 0; i < ring_.primes().size(); ++i) {
    if (exps_[i] < 0) {
      mpz_class pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), ring_.primes()[i], static_cast<unsigned long>(-exps_[i]));
      d *= pw;
    }
  }
  return d;
}

mpz_class RingElement::field_norm() const {
  return a_ * a_ - mpz_class(ring_.parameter()) * b_ * b_;
}

mpz_class RingElement::height() const {
  if (ring_.is_quadratic()) return std::max(mpz_class(abs(a_)), mpz_class(abs(b_)));
  return std::max(mpz_class(abs(numerator())), denominator());
}

std::optional<RingElement> RingElement::inverse() const {
  if (ring_.is_quadratic()) {
    const mpz_class n = field_norm();
    if (n != 1 && n != -1) return std::nullopt;
    return quadratic(ring_, a_ * n, -b_ * n);
  }
  if (a_ != 1 && a_ != -1) return std::nullopt;
  RingElement inv(*this);
  for (auto& e : inv.exps_) e = -e;
  return inv;
}

std::optional<RingElement> RingElement::divide(const RingElement& divisor) const {
  require_same_ring(*this, divisor);
  if (divisor.is_zero()) return std::nullopt;
  if (ring_.is_quadratic()) {
    const mpz_class n = divisor.field_norm();
    const mpz_class d(ring_.parameter());
    // (a + b s)(c - e s) = (ac - d be) + (bc - ae) s
    mpz_class x = a_ * divisor.a_ - d * b_ * divisor.b_;
    mpz_class y = b_ * divisor.a_ - a_ * divisor.b_;
    if (!mpz_divisible_p(x.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(y.get_mpz_t(), n.get_mpz_t())) {
      return std::nullopt;
    }
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
    return quadratic(ring_, x, y);
  }
  if (!mpz_divisible_p(a_.get_mpz_t(), divisor.a_.get_mpz_t())) return std::nullopt;
  RingElement q(ring_);
  if (a_ == 0) return q;
  mpz_divexact(q.a_.get_mpz_t(), a_.get_mpz_t(), divisor.a_.get_mpz_t());
  for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] = exps_[i] - divisor.exps_[i];
  return q;
}

RingElement RingElement::pow(std::int64_t e) const {
  if (e < 0) {
    auto inv = inverse();
    if (!inv) throw Error(Errc::NonUnit, to_string() + " has no inverse in " + ring_.to_string());
    return inv->pow(-e);
  }
  if (!ring_.is_quadratic()) {
    RingElement r(ring_);
    mpz_pow_ui(r.a_.get_mpz_t(), a_.get_mpz_t(), static_cast<unsigned long>(e));
    if (r.a_ != 0) {
      for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] * e;
    }
    return r;
  }
  RingElement result = integer(ring_, 1);
  RingElement base = *this;
  auto bits = static_cast<std::uint64_t>(e);
  while (bits != 0) {
    if (bits & 1U) result *= base;
    bits >>= 1U;
    if (bits != 0) base *= base;
  }
  return result;
}

RingElement RingElement::conjugate() const {
  RingElement c(*this);
  c.b_ = -c.b_;
  return c;
}

std::string RingElement::to_string() const {
  if (ring_.is_quadratic()) {
    const std::string root = "sqrt(" + std::to_string(ring_.parameter()) + ")";
    auto sqrt_term = [&](const mpz_class& b) {
      if (b == 1) return root;
      if (b == -1) return "-" + root;
      return b.get_str() + "*" + root;
    };
    if (b_ == 0) return a_.get_str();
    if (a_ == 0) return sqrt_term(b_);
    std::string s = a_.get_str();
    if (b_ > 0) s += "+";
    return s + sqrt_term(b_);
  }
  const mpz_class den = denominator();
  if (den == 1) return numerator().get_str();
  return numerator().get_str() + "/" + den.get_str();
}

namespace {

RingElement parse_rational(const RingDescriptor& ring, const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return RingElement::integer(ring, parse_integer(s));
  const mpz_class num = parse_integer(std::string_view(s).substr(0, slash));
  std::string_view den_text = std::string_view(s).substr(slash + 1);
  mpz_class den;
  if (const auto caret = den_text.find('^'); caret != std::string_view::npos) {
    std::string_view base_text = den_text.substr(0, caret);
    if (!all_digits(base_text)) throw Error(Errc::ParseError, "bad denominator in '" + s + "'");
    const mpz_class base(std::string(base_text), 10);
    const std::uint64_t e = parse_u64(den_text.substr(caret + 1));
    mpz_pow_ui(den.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  } else {
    if (!all_digits(den_text)) throw Error(Errc::ParseError, "bad denominator in '" + s + "'");
    den = mpz_class(std::string(den_text), 10);
  }
  return RingElement::fraction(ring, num, den);
}

RingElement parse_quadratic(const RingDescriptor& ring, const std::string& s) {
  const std::string root = "sqrt(" + std::to_string(ring.parameter()) + ")";
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '*')) {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  mpz_class a = 0;
  mpz_class b = 0;
  for (std::string term : terms) {
    if (!term.empty() && term.front() == '+') term.erase(0, 1);
    const auto pos = term.find("sqrt(");
    if (pos == std::string::npos) {
      a += parse_integer(term);
      continue;
    }
    if (term.compare(pos, std::string::npos, root) != 0) {
      throw Error(Errc::ParseError, "'" + term + "' does not match " + ring.to_string());
    }
    std::string coeff = term.substr(0, pos);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    if (coeff.empty() || coeff == "+") {
      b += 1;
    } else if (coeff == "-") {
      b -= 1;
    } else {
      b += parse_integer(coeff);
    }
  }
  return RingElement::quadratic(ring, a, b);
}

}  // namespace

RingElement RingElement::parse(const RingDescriptor& ring, std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw Error(Errc::ParseError, "empty ring element");
  if (ring.is_quadratic()) return parse_quadratic(ring, s);
  if (s.find("sqrt") != std::string::npos) {
    throw Error(Errc::NotInRing, "'" + s + "' is not an element of " + ring.to_string());
  }
  return parse_rational(ring, s);
}

RingElement RingElement::operator-() const {
  RingElement r(*this);
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  require_same_ring(*this, o);
  if (ring_.is_quadratic()) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  mpz_class lhs = a_;
  mpz_class rhs = o.a_;
  for (std::size_t i = 0; i < ring_.primes().size(); ++i) {
    const std::int64_t low = std::min(exps_[i], o.exps_[i]);
    mpz_class pw;
    if (exps_[i] > low) {
      mpz_ui_pow_ui(pw.get_mpz_t(), ring_.primes()[i], static_cast<unsigned long>(exps_[i] - low));
      lhs *= pw;
    }
    if (o.exps_[i] > low) {
      mpz_ui_pow_ui(pw.get_mpz_t(), ring_.primes()[i], static_cast<unsigned long>(o.exps_[i] - low));
      rhs *= pw;
    }
    exps_[i] = low;
  }
  a_ = lhs + rhs;
  normalize();
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) { return *this += -o; }

RingElement& RingElement::operator*=(const RingElement& o) {
  require_same_ring(*this, o);
  if (ring_.is_quadratic()) {
    const mpz_class d(ring_.parameter());
    mpz_class a = a_ * o.a_ + d * b_ * o.b_;
    mpz_class b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  a_ *= o.a_;
  if (a_ == 0) {
    exps_.fill(0);
  } else {
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += o.exps_[i];
  }
  return *this;
}

bool operator==(const RingElement& x, const RingElement& y) {
  return x.ring_ == y.ring_ && x.a_ == y.a_ && x.b_ == y.b_ && x.exps_ == y.exps_;
}

void require_same_ring(const RingElement& x, const RingElement& y) {
  if (!(x.ring() == y.ring())) {
    throw Error(Errc::MixedRings, x.ring().to_string() + " vs " + y.ring().to_string());
  }
}

// ---------------------------------------------------------------- ideals

PrincipalIdeal::PrincipalIdeal(RingElement generator) : generator_(std::move(generator)) {
  if (generator_.is_zero()) throw Error(Errc::ZeroIdeal, "the zero ideal has infinite index");
}

bool PrincipalIdeal::contains(const RingElement& x) const { return x.divide(generator_).has_value(); }

bool in_ideal(const RingElement& x, const PrincipalIdeal& ideal) { return ideal.contains(x); }

}  // namespace sl2cert
