#include "sl2cert/elemgen.hpp"

#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace sl2cert {

Decomposition h_decomposition(const RingElement& u) {
  const auto inv = u.inverse();
  if (!inv) throw Error(Errc::NonUnit, "h(u) needs a unit, got " + u.to_string());
  const RingDescriptor& ring = u.ring();
  const RingElement one = RingElement::integer(ring, 1);
  GroupWord word;
  word.factors = {
      Factor::elem12(u), Factor::elem21(-*inv), Factor::elem12(u),
      Factor::elem12(-one), Factor::elem21(one), Factor::elem12(-one),
  };
  return Decomposition{Mat2::diagonal(u), std::move(word)};
}

std::vector<RingElement> EuclideanStrategy::search_moves(const RingDescriptor& ring) const {
  return {RingElement::integer(ring, -1), RingElement::integer(ring, 1)};
}

namespace {

/// Nearest integer to num/den, ties towards +infinity.
mpz_class round_div(const mpz_class& num, const mpz_class& den) {
  mpz_class n = 2 * num + den;
  mpz_class d = 2 * den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

class IntegerStrategy final : public EuclideanStrategy {
 public:
  mpz_class size(const RingElement& x) const override { return abs(x.coprime_part()); }
  RingElement quotient(const RingElement& a, const RingElement& b) const override {
    return RingElement::integer(a.ring(), round_div(a.coprime_part(), b.coprime_part()));
  }
  std::vector<RingElement> search_moves(const RingDescriptor& ring) const override {
    return {RingElement::integer(ring, -2), RingElement::integer(ring, -1),
            RingElement::integer(ring, 1), RingElement::integer(ring, 2)};
  }
};

/// Euclid on the parts prime to m; the m-parts are units of Z[1/m].
class LocalizedStrategy final : public EuclideanStrategy {
 public:
  mpz_class size(const RingElement& x) const override { return abs(x.coprime_part()); }
  RingElement quotient(const RingElement& a, const RingElement& b) const override {
    const QuotientRing q{PrincipalIdeal(b)};
    const mpz_class modulus = abs(b.coprime_part());
    mpz_class r = q.reduce(a).x;
    if (2 * r > modulus) r -= modulus;
    auto quot = (a - RingElement::integer(a.ring(), r)).divide(b);
    if (!quot) throw std::logic_error("residue does not differ from a by a multiple of b");
    return *quot;
  }
  std::vector<RingElement> search_moves(const RingDescriptor& ring) const override {
    std::vector<RingElement> moves;
    for (auto p : ring.primes()) {
      moves.push_back(RingElement::integer(ring, -static_cast<long>(p)));
      moves.push_back(RingElement::fraction(ring, -1, static_cast<long>(p)));
    }
    moves.push_back(RingElement::integer(ring, -1));
    moves.push_back(RingElement::integer(ring, 1));
    for (auto p : ring.primes()) {
      moves.push_back(RingElement::fraction(ring, 1, static_cast<long>(p)));
      moves.push_back(RingElement::integer(ring, static_cast<long>(p)));
    }
    return moves;
  }
};

/// Norm-Euclidean rounding in Q(sqrt d) for d in {2, 3}.
class QuadraticStrategy final : public EuclideanStrategy {
 public:
  mpz_class size(const RingElement& x) const override { return abs(x.field_norm()); }
  RingElement quotient(const RingElement& a, const RingElement& b) const override {
    const RingElement num = a * b.conjugate();
    const mpz_class n = b.field_norm();
    return RingElement::quadratic(a.ring(), round_div(num.rational_part(), n),
                                  round_div(num.sqrt_part(), n));
  }
  std::vector<RingElement> search_moves(const RingDescriptor& ring) const override {
    std::vector<RingElement> moves;
    for (long b : {-1, 0, 1}) {
      for (long a : {-1, 0, 1}) {
        if (a == 0 && b == 0) continue;
        moves.push_back(RingElement::quadratic(ring, a, b));
      }
    }
    return moves;
  }
};

/// Row operations applied to the working matrix, recorded as the inverse
/// factors so that the recorded word times the final matrix is the input.
class Reducer {
 public:
  explicit Reducer(const Mat2& a) : m_(a) {}

  void apply12(const RingElement& s) {
    if (s.is_zero()) return;
    m_ = Mat2::elementary12(s) * m_;
    word_.factors.push_back(Factor::elem12(-s));
  }
  void apply21(const RingElement& s) {
    if (s.is_zero()) return;
    m_ = Mat2::elementary21(s) * m_;
    word_.factors.push_back(Factor::elem21(-s));
  }

  const Mat2& matrix() const { return m_; }
  GroupWord& word() { return word_; }

 private:
  Mat2 m_;
  GroupWord word_;
};

struct Move {
  bool upper;  // E12 when true, E21 otherwise
  RingElement arg;
};

/// Breadth-first search over elementary row moves on the first column until
/// the Euclidean potential drops or a unit appears.
std::vector<Move> search_progress(const RingElement& a, const RingElement& c,
                                  const EuclideanStrategy& strategy, const DecomposeOptions& options) {
  struct Node {
    RingElement a, c;
    std::vector<Move> path;
  };
  const mpz_class start = strategy.size(a) + strategy.size(c);
  const auto moves = strategy.search_moves(a.ring());
  std::deque<Node> frontier;
  std::unordered_set<std::string> seen;
  frontier.push_back(Node{a, c, {}});
  seen.insert(a.to_string() + "|" + c.to_string());
  std::size_t expanded = 0;
  while (!frontier.empty()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    if (node.path.size() >= options.bfs_depth) continue;
    if (++expanded > options.bfs_node_cap) break;
    for (bool upper : {true, false}) {
      for (const auto& s : moves) {
        Node next{node.a, node.c, node.path};
        if (upper) {
          next.a += s * node.c;
        } else {
          next.c += s * node.a;
        }
        next.path.push_back(Move{upper, s});
        if (next.c.is_zero() || next.a.is_unit() || next.c.is_unit() ||
            strategy.size(next.a) + strategy.size(next.c) < start) {
          return next.path;
        }
        if (seen.insert(next.a.to_string() + "|" + next.c.to_string()).second) {
          frontier.push_back(std::move(next));
        }
      }
    }
  }
  throw Error(Errc::SearchExhausted, "no reducing move sequence within depth " +
                                         std::to_string(options.bfs_depth) + " for column (" +
                                         a.to_string() + ", " + c.to_string() + ")");
}

/// Merges neighbouring factors of the same kind and drops trivial ones.
GroupWord simplify(const GroupWord& word) {
  GroupWord out;
  for (const auto& f : word.factors) {
    if (!out.factors.empty() && out.factors.back().kind == f.kind) {
      auto& last = out.factors.back();
      *last.arg += *f.arg;
      if (last.arg->is_zero()) out.factors.pop_back();
      continue;
    }
    if (!f.arg->is_zero()) out.factors.push_back(f);
  }
  return out;
}

}  // namespace

std::unique_ptr<EuclideanStrategy> euclidean_strategy(const RingDescriptor& ring) {
  switch (ring.kind()) {
    case RingDescriptor::Kind::Integers: return std::make_unique<IntegerStrategy>();
    case RingDescriptor::Kind::LocalizedIntegers: return std::make_unique<LocalizedStrategy>();
    case RingDescriptor::Kind::QuadraticRing:
      if (ring.parameter() == 2 || ring.parameter() == 3) return std::make_unique<QuadraticStrategy>();
      break;
  }
  throw Error(Errc::UnsupportedRing, ring.to_string() + " has no Euclidean strategy (only d = 2, 3)");
}

Decomposition decompose(const Mat2& a, const DecomposeOptions& options) {
  return decompose_with(a, *euclidean_strategy(a.ring()), options);
}

Decomposition decompose_with(const Mat2& a, const EuclideanStrategy& strategy,
                             const DecomposeOptions& options) {
  const RingDescriptor& ring = a.ring();
  const RingElement one = RingElement::integer(ring, 1);
  Reducer red(a);
  while (!red.matrix().a21().is_zero()) {
    const RingElement x = red.matrix().a11();
    const RingElement c = red.matrix().a21();
    if (auto cinv = c.inverse()) {
      red.apply12((one - x) * *cinv);
      red.apply21(-c);
      break;
    }
    if (auto xinv = x.inverse()) {
      red.apply21((one - c) * *xinv);
      continue;
    }
    const mpz_class before = strategy.size(x) + strategy.size(c);
    if (strategy.size(x) >= strategy.size(c)) {
      red.apply12(-strategy.quotient(x, c));
    } else {
      red.apply21(-strategy.quotient(c, x));
    }
    const mpz_class after = strategy.size(red.matrix().a11()) + strategy.size(red.matrix().a21());
    if (after < before) continue;
    for (const auto& mv : search_progress(red.matrix().a11(), red.matrix().a21(), strategy, options)) {
      if (mv.upper) {
        red.apply12(mv.arg);
      } else {
        red.apply21(mv.arg);
      }
    }
  }

  // Upper triangular remainder [[x, b], [0, x^-1]] = h(x) E12(x^-1 b).
  const Mat2& t = red.matrix();
  GroupWord word = red.word();
  if (t.a11().is_one()) {
    word.factors.push_back(Factor::elem12(t.a12()));
  } else {
    word.append(h_decomposition(t.a11()).word);
    word.factors.push_back(Factor::elem12(t.a22() * t.a12()));
  }
  Decomposition result{a, simplify(word)};
  if (!(evaluate(result.word, ring) == a)) {
    throw std::logic_error("decomposition of " + a.to_string() + " does not evaluate back");
  }
  return result;
}

LengthStats length_stats(std::span<const Mat2> sample, const DecomposeOptions& options) {
  LengthStats stats;
  std::size_t total = 0;
  for (const auto& m : sample) {
    const std::size_t len = decompose(m, options).length();
    stats.max = std::max(stats.max, len);
    total += len;
    ++stats.count;
  }
  if (stats.count != 0) stats.mean = static_cast<double>(total) / static_cast<double>(stats.count);
  return stats;
}

bool reduces_to_identity(const Mat2& a, const PrincipalIdeal& ideal) {
  const QuotientRing q(ideal);
  return is_residue_identity(q, reduce_mat(a, q));
}

}  // namespace sl2cert
