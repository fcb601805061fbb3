#include "sl2cert/sl2.hpp"

#include <cassert>
#include <cctype>

namespace sl2cert {

namespace {

RingElement det(const RingElement& a11, const RingElement& a12, const RingElement& a21,
                const RingElement& a22) {
  return a11 * a22 - a12 * a21;
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

/// Splits `[[a,b],[c,d]]` into its four entry strings.
std::array<std::string, 4> split_matrix(std::string_view text) {
  const std::string s = strip_spaces(text);
  const auto fail = [&]() {
    return Error(Errc::ParseError, "expected [[a,b],[c,d]], got '" + std::string(text) + "'");
  };
  if (s.size() < 9 || s.rfind("[[", 0) != 0 || s.compare(s.size() - 2, 2, "]]") != 0) throw fail();
  const std::string body = s.substr(2, s.size() - 4);
  const auto mid = body.find("],[");
  if (mid == std::string::npos) throw fail();
  std::array<std::string, 4> out;
  const std::string rows[2] = {body.substr(0, mid), body.substr(mid + 3)};
  for (int r = 0; r < 2; ++r) {
    const auto comma = rows[r].find(',');
    if (comma == std::string::npos || rows[r].find(',', comma + 1) != std::string::npos) throw fail();
    out[2 * r] = rows[r].substr(0, comma);
    out[2 * r + 1] = rows[r].substr(comma + 1);
  }
  return out;
}

}  // namespace

Mat2::Mat2(RingElement a11, RingElement a12, RingElement a21, RingElement a22)
    : e_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {
  for (const auto& x : e_) require_same_ring(e_[0], x);
  const RingElement d = det(e_[0], e_[1], e_[2], e_[3]);
  if (!d.is_one()) {
    throw Error(Errc::DeterminantNotOne, to_string() + " has determinant " + d.to_string());
  }
}

Mat2::Mat2(Unchecked, RingElement a11, RingElement a12, RingElement a21, RingElement a22)
    : e_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {
  assert(det(e_[0], e_[1], e_[2], e_[3]).is_one());
}

Mat2 Mat2::identity(const RingDescriptor& ring) {
  const RingElement one = RingElement::integer(ring, 1);
  const RingElement zero(ring);
  return Mat2(Unchecked{}, one, zero, zero, one);
}

Mat2 Mat2::elementary12(const RingElement& x) {
  const RingElement one = RingElement::integer(x.ring(), 1);
  return Mat2(Unchecked{}, one, x, RingElement(x.ring()), one);
}

Mat2 Mat2::elementary21(const RingElement& x) {
  const RingElement one = RingElement::integer(x.ring(), 1);
  return Mat2(Unchecked{}, one, RingElement(x.ring()), x, one);
}

Mat2 Mat2::diagonal(const RingElement& u) {
  auto inv = u.inverse();
  if (!inv) throw Error(Errc::NonUnitDiagonal, "h(u) needs a unit, got " + u.to_string());
  return Mat2(Unchecked{}, u, RingElement(u.ring()), RingElement(u.ring()), *inv);
}

Mat2 Mat2::parse(const RingDescriptor& ring, std::string_view text) {
  const auto parts = split_matrix(text);
  return Mat2(RingElement::parse(ring, parts[0]), RingElement::parse(ring, parts[1]),
              RingElement::parse(ring, parts[2]), RingElement::parse(ring, parts[3]));
}

Mat2 Mat2::inverse() const { return Mat2(Unchecked{}, e_[3], -e_[1], -e_[2], e_[0]); }

bool Mat2::is_identity() const {
  return e_[0].is_one() && e_[1].is_zero() && e_[2].is_zero() && e_[3].is_one();
}

bool Mat2::is_scalar() const { return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3]; }

std::string Mat2::to_string() const {
  return "[[" + e_[0].to_string() + "," + e_[1].to_string() + "],[" + e_[2].to_string() + "," +
         e_[3].to_string() + "]]";
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  require_same_ring(a.e_[0], b.e_[0]);
  return Mat2(Mat2::Unchecked{}, a.e_[0] * b.e_[0] + a.e_[1] * b.e_[2],
              a.e_[0] * b.e_[1] + a.e_[1] * b.e_[3], a.e_[2] * b.e_[0] + a.e_[3] * b.e_[2],
              a.e_[2] * b.e_[1] + a.e_[3] * b.e_[3]);
}

Mat2 conjugate(const Mat2& g, const Mat2& a) { return g * a * g.inverse(); }

Mat2 commutator(const Mat2& g, const Mat2& a) { return g * a * g.inverse() * a.inverse(); }

// ---------------------------------------------------------------- words

bool GroupWord::is_elementary() const {
  for (const auto& f : factors) {
    if (f.kind != Factor::Kind::Elem12 && f.kind != Factor::Kind::Elem21) return false;
  }
  return true;
}

GroupWord& GroupWord::append(const GroupWord& other) {
  factors.insert(factors.end(), other.factors.begin(), other.factors.end());
  return *this;
}

Factor Factor::elem12(RingElement x) { return Factor{Kind::Elem12, std::move(x), {}, {}}; }
Factor Factor::elem21(RingElement x) { return Factor{Kind::Elem21, std::move(x), {}, {}}; }
Factor Factor::diag(RingElement u) { return Factor{Kind::Diag, std::move(u), {}, {}}; }
Factor Factor::conj(GroupWord conjugator, GroupWord core) {
  return Factor{Kind::Conj, std::nullopt, std::move(conjugator), std::move(core)};
}
Factor Factor::inv(GroupWord word) { return Factor{Kind::Inv, std::nullopt, std::move(word), {}}; }

bool operator==(const Factor& a, const Factor& b) {
  return a.kind == b.kind && a.arg == b.arg && a.first == b.first && a.second == b.second;
}

Mat2 evaluate(const GroupWord& word, const RingDescriptor& ring) {
  Mat2 acc = Mat2::identity(ring);
  for (const auto& f : word.factors) {
    switch (f.kind) {
      case Factor::Kind::Elem12: acc = acc * Mat2::elementary12(*f.arg); break;
      case Factor::Kind::Elem21: acc = acc * Mat2::elementary21(*f.arg); break;
      case Factor::Kind::Diag: acc = acc * Mat2::diagonal(*f.arg); break;
      case Factor::Kind::Conj: acc = acc * conjugate(evaluate(f.first, ring), evaluate(f.second, ring)); break;
      case Factor::Kind::Inv: acc = acc * evaluate(f.first, ring).inverse(); break;
    }
  }
  return acc;
}

// ---------------------------------------------------------------- residues

ResidueMat reduce_mat(const Mat2& a, const QuotientRing& q) {
  return ResidueMat{{q.reduce(a.a11()), q.reduce(a.a12()), q.reduce(a.a21()), q.reduce(a.a22())}};
}

ResidueMat residue_identity(const QuotientRing& q) {
  return ResidueMat{{q.one(), q.zero(), q.zero(), q.one()}};
}

ResidueMat residue_mul(const QuotientRing& q, const ResidueMat& a, const ResidueMat& b) {
  const auto& x = a.e;
  const auto& y = b.e;
  return ResidueMat{{q.add(q.mul(x[0], y[0]), q.mul(x[1], y[2])),
                     q.add(q.mul(x[0], y[1]), q.mul(x[1], y[3])),
                     q.add(q.mul(x[2], y[0]), q.mul(x[3], y[2])),
                     q.add(q.mul(x[2], y[1]), q.mul(x[3], y[3]))}};
}

ResidueMat residue_inverse(const QuotientRing& q, const ResidueMat& a) {
  return ResidueMat{{a.e[3], q.neg(a.e[1]), q.neg(a.e[2]), a.e[0]}};
}

Residue residue_det(const QuotientRing& q, const ResidueMat& a) {
  return q.sub(q.mul(a.e[0], a.e[3]), q.mul(a.e[1], a.e[2]));
}

bool is_residue_identity(const QuotientRing& q, const ResidueMat& a) {
  return a == residue_identity(q);
}

std::string residue_mat_to_string(const QuotientRing& q, const ResidueMat& a) {
  return "[[" + q.to_string(a.e[0]) + "," + q.to_string(a.e[1]) + "],[" + q.to_string(a.e[2]) +
         "," + q.to_string(a.e[3]) + "]]";
}

ResidueMat parse_residue_mat(const QuotientRing& q, std::string_view text) {
  const auto parts = split_matrix(text);
  return ResidueMat{{q.parse(parts[0]), q.parse(parts[1]), q.parse(parts[2]), q.parse(parts[3])}};
}

ResidueMat evaluate_mod(const GroupWord& word, const QuotientRing& q) {
  ResidueMat acc = residue_identity(q);
  for (const auto& f : word.factors) {
    ResidueMat m = residue_identity(q);
    switch (f.kind) {
      case Factor::Kind::Elem12: m.e[1] = q.reduce(*f.arg); break;
      case Factor::Kind::Elem21: m.e[2] = q.reduce(*f.arg); break;
      case Factor::Kind::Diag: m = reduce_mat(Mat2::diagonal(*f.arg), q); break;
      case Factor::Kind::Conj: {
        const ResidueMat g = evaluate_mod(f.first, q);
        m = residue_mul(q, residue_mul(q, g, evaluate_mod(f.second, q)), residue_inverse(q, g));
        break;
      }
      case Factor::Kind::Inv: m = residue_inverse(q, evaluate_mod(f.first, q)); break;
    }
    acc = residue_mul(q, acc, m);
  }
  return acc;
}

}  // namespace sl2cert
