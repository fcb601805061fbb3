#include "sl2cert/norms.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

namespace sl2cert {

// ---------------------------------------------------------------- group table

FiniteGroupTable::FiniteGroupTable(const QuotientRing& q, std::uint64_t max_elements) : q_(q) {
  n_ = static_cast<std::uint32_t>(q_.small_index(kMaxResidues));
  std::vector<Residue> residues;
  residues.reserve(n_);
  for (std::uint32_t i = 0; i < n_; ++i) residues.push_back(q_.residue_at(i));

  add_.resize(std::size_t{n_} * n_);
  mul_.resize(std::size_t{n_} * n_);
  neg_.resize(n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    neg_[a] = static_cast<std::uint32_t>(q_.ordinal(q_.neg(residues[a])));
    for (std::uint32_t b = 0; b < n_; ++b) {
      add_[a * n_ + b] = static_cast<std::uint32_t>(q_.ordinal(q_.add(residues[a], residues[b])));
      mul_[a * n_ + b] = static_cast<std::uint32_t>(q_.ordinal(q_.mul(residues[a], residues[b])));
    }
  }
  const auto one = static_cast<std::uint32_t>(q_.ordinal(q_.one()));
  std::vector<std::optional<std::uint32_t>> unit_inverse(n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    for (std::uint32_t b = 0; b < n_; ++b) {
      if (mul(a, b) == one) {
        unit_inverse[a] = b;
        break;
      }
    }
  }

  auto push = [&](const Entries& e) {
    if (elems_.size() >= max_elements) {
      throw Error(Errc::QuotientTooLarge,
                  "SL2 over " + q_.describe() + " exceeds " + std::to_string(max_elements) + " elements");
    }
    lookup_.emplace(key(e), static_cast<Index>(elems_.size()));
    elems_.push_back(e);
  };
  for (std::uint32_t a = 0; a < n_; ++a) {
    for (std::uint32_t b = 0; b < n_; ++b) {
      for (std::uint32_t c = 0; c < n_; ++c) {
        const std::uint32_t rhs = add(one, mul(b, c));  // a d = 1 + b c
        if (unit_inverse[a]) {
          push({a, b, c, mul(*unit_inverse[a], rhs)});
          continue;
        }
        for (std::uint32_t d = 0; d < n_; ++d) {
          if (mul(a, d) == rhs) push({a, b, c, d});
        }
      }
    }
  }
  identity_ = lookup_.at(key({one, 0, 0, one}));
  inverse_.resize(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    const auto& e = elems_[i];
    inverse_[i] = lookup_.at(key({e[3], neg_[e[1]], neg_[e[2]], e[0]}));
  }
}

std::uint64_t FiniteGroupTable::key(const Entries& e) const {
  const std::uint64_t n = n_;
  return ((std::uint64_t{e[0]} * n + e[1]) * n + e[2]) * n + e[3];
}

FiniteGroupTable::Index FiniteGroupTable::multiply(Index a, Index b) const {
  const auto& x = elems_[a];
  const auto& y = elems_[b];
  const Entries p{add(mul(x[0], y[0]), mul(x[1], y[2])), add(mul(x[0], y[1]), mul(x[1], y[3])),
                  add(mul(x[2], y[0]), mul(x[3], y[2])), add(mul(x[2], y[1]), mul(x[3], y[3]))};
  return lookup_.at(key(p));
}

ResidueMat FiniteGroupTable::element(Index i) const {
  const auto& e = elems_[i];
  return ResidueMat{{q_.residue_at(e[0]), q_.residue_at(e[1]), q_.residue_at(e[2]), q_.residue_at(e[3])}};
}

std::optional<FiniteGroupTable::Index> FiniteGroupTable::index_of(const ResidueMat& m) const {
  Entries e;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::uint64_t ord = q_.ordinal(m.e[k]);
    if (ord >= n_ || !(q_.residue_at(ord) == m.e[k])) return std::nullopt;
    e[k] = static_cast<std::uint32_t>(ord);
  }
  const auto it = lookup_.find(key(e));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

FiniteGroupTable::Index FiniteGroupTable::elementary12(const Residue& r) const {
  ResidueMat m = residue_identity(q_);
  m.e[1] = r;
  return *index_of(m);
}

FiniteGroupTable::Index FiniteGroupTable::elementary21(const Residue& r) const {
  ResidueMat m = residue_identity(q_);
  m.e[2] = r;
  return *index_of(m);
}

// ---------------------------------------------------------------- closures

ElementSet conjugation_closure(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Index> s) {
  std::vector<bool> member(g.size(), false);
  std::vector<FiniteGroupTable::Index> pending(s.begin(), s.end());
  for (auto x : s) pending.push_back(g.inverse(x));
  // Each conjugacy class is conjugation-closed, and the class of x^-1 is the
  // inverse of the class of x, so one sweep per seed reaches the fixed point.
  for (auto x : pending) {
    if (member[x]) continue;
    for (FiniteGroupTable::Index h = 0; h < g.size(); ++h) member[g.conjugate(h, x)] = true;
  }
  ElementSet out;
  for (FiniteGroupTable::Index i = 0; i < g.size(); ++i) {
    if (member[i]) out.push_back(i);
  }
  return out;
}

bool is_conjugation_closed(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Index> s) {
  std::vector<bool> member(g.size(), false);
  for (auto x : s) member[x] = true;
  for (auto x : s) {
    if (!member[g.inverse(x)]) return false;
    for (FiniteGroupTable::Index h = 0; h < g.size(); ++h) {
      if (!member[g.conjugate(h, x)]) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- word norms

std::vector<FiniteGroupTable::Index> NormTable::path_to(FiniteGroupTable::Index target) const {
  std::vector<FiniteGroupTable::Index> path;
  if (lengths.at(target) == kUnreachable) return path;
  for (auto cur = target; lengths[cur] != 0; cur = parent[cur]) path.push_back(via[cur]);
  std::reverse(path.begin(), path.end());
  return path;
}

NormTable word_norm_table(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Index> generators) {
  if (!is_conjugation_closed(g, generators)) {
    throw Error(Errc::GeneratorsNotClosed, "generating set is not symmetric and conjugation-closed");
  }
  NormTable table;
  table.generators.assign(generators.begin(), generators.end());
  std::sort(table.generators.begin(), table.generators.end());
  table.generators.erase(std::unique(table.generators.begin(), table.generators.end()),
                         table.generators.end());
  table.lengths.assign(g.size(), kUnreachable);
  table.parent.assign(g.size(), g.identity());
  table.via.assign(g.size(), g.identity());
  table.lengths[g.identity()] = 0;
  std::deque<FiniteGroupTable::Index> frontier{g.identity()};
  while (!frontier.empty()) {
    const auto cur = frontier.front();
    frontier.pop_front();
    for (auto s : table.generators) {
      const auto next = g.multiply(cur, s);
      if (table.lengths[next] != kUnreachable) continue;
      table.lengths[next] = table.lengths[cur] + 1;
      table.parent[next] = cur;
      table.via[next] = s;
      frontier.push_back(next);
    }
  }
  return table;
}

std::uint32_t bfs_norm(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Index> generators,
                       FiniteGroupTable::Index element) {
  return word_norm_table(g, generators).lengths.at(element);
}

// ---------------------------------------------------------------- axioms

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

namespace {

std::string show(std::uint32_t v) { return v == kUnreachable ? "inf" : std::to_string(v); }

std::uint64_t sum(std::uint32_t a, std::uint32_t b) {
  if (a == kUnreachable || b == kUnreachable) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{a} + b;
}

std::uint64_t widen(std::uint32_t a) {
  return a == kUnreachable ? std::numeric_limits<std::uint64_t>::max() : a;
}

}  // namespace

AxiomReport check_norm_axioms(const FiniteGroupTable& g, std::span<const std::uint32_t> values) {
  using Index = FiniteGroupTable::Index;
  const QuotientRing& q = g.quotient();
  auto name = [&](Index i) { return residue_mat_to_string(q, g.element(i)); };
  AxiomReport report;
  report.results = {{"separation"}, {"symmetry"}, {"triangle"}, {"conjugation-invariance"}};
  auto fail = [](AxiomResult& r, std::string what) {
    if (!r.passed) return;
    r.passed = false;
    r.counterexample = std::move(what);
  };
  const auto n = static_cast<Index>(g.size());
  for (Index a = 0; a < n; ++a) {
    if ((values[a] == 0) != (a == g.identity())) {
      fail(report.results[0], "||" + name(a) + "|| = " + show(values[a]));
    }
    if (values[a] != values[g.inverse(a)]) {
      fail(report.results[1], "||" + name(a) + "|| = " + show(values[a]) + " but its inverse has " +
                                  show(values[g.inverse(a)]));
    }
  }
  for (Index a = 0; a < n && (report.results[2].passed || report.results[3].passed); ++a) {
    for (Index b = 0; b < n; ++b) {
      const Index ab = g.multiply(a, b);
      if (widen(values[ab]) > sum(values[a], values[b])) {
        fail(report.results[2], "a = " + name(a) + ", b = " + name(b) + ": ||ab|| = " + show(values[ab]) +
                                    " > " + show(values[a]) + " + " + show(values[b]));
      }
      const Index conj = g.multiply(ab, g.inverse(a));
      if (values[conj] != values[b]) {
        fail(report.results[3], "a = " + name(a) + ", b = " + name(b) + ": ||aba^-1|| = " +
                                    show(values[conj]) + " != ||b|| = " + show(values[b]));
      }
    }
  }
  return report;
}

std::optional<std::string> word_length_inconsistency(const FiniteGroupTable& g,
                                                     std::span<const FiniteGroupTable::Index> generators,
                                                     std::span<const std::uint32_t> lengths) {
  using Index = FiniteGroupTable::Index;
  if (lengths.size() != g.size()) return "length table has the wrong size";
  if (lengths[g.identity()] != 0) return "identity does not have length 0";
  for (Index x = 0; x < g.size(); ++x) {
    if (x != g.identity() && lengths[x] == 0) return "non-identity element with length 0";
    bool has_predecessor = lengths[x] == 0 || lengths[x] == kUnreachable;
    for (auto s : generators) {
      const std::uint32_t next = lengths[g.multiply(x, s)];
      if (widen(next) > sum(lengths[x], 1)) return "length grows by more than one along a generator";
      if (lengths[x] != kUnreachable && lengths[x] != 0 && next == lengths[x] - 1) has_predecessor = true;
    }
    if (!has_predecessor) return "element without a shorter neighbour";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- 4-ball bound

BoundReport lemma_bound_experiment(const Mat2& a, const ManyUnitsCertificate& cert,
                                   const PrincipalIdeal& modulus, const BoundOptions& options) {
  if (!(cert.c == a.a21())) {
    throw Error(Errc::UnitCongruenceViolated, "certificate is for c = " + cert.c.to_string() +
                                                  " but A has corner " + a.a21().to_string());
  }
  const RingDescriptor& ring = a.ring();
  const QuotientRing q(modulus);
  const PrincipalIdeal j_ideal = epsilon_ideal(cert);
  if (q.reduce(j_ideal.generator()) == q.zero()) {
    throw Error(Errc::DegenerateQuotient, "J = (" + j_ideal.generator().to_string() + ") lies in " +
                                              q.describe() + ", so every E12(j) reduces to the identity");
  }
  const FiniteGroupTable group(q, options.max_group_elements);
  const ResidueMat a_bar = reduce_mat(a, q);
  const auto a_idx = *group.index_of(a_bar);
  const FiniteGroupTable::Index seeds[] = {a_idx};
  const ElementSet gens = conjugation_closure(group, seeds);
  const NormTable norms = word_norm_table(group, gens);

  BoundReport report{q.describe(), j_ideal.generator(), group.size(), gens.size(), {}, {}, 0, 0};
  const RingElement u4 = cert.u.pow(4);
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<long> pick(1, 1'000'000);
  const std::size_t max_attempts = 100 * std::max<std::size_t>(options.sample_size, 1);
  for (std::size_t attempt = 0; attempt < max_attempts && report.samples.size() < options.sample_size;
       ++attempt) {
    const RingElement r = RingElement::integer(ring, pick(rng));
    const RingElement j = j_ideal.generator() * r;
    const Residue j_bar = q.reduce(j);
    if (j_bar == q.zero()) continue;  // trivial image, norm 0

    // (u^4 - u^-4) * u^4 c r = (u^8 - 1) c r = j
    const ConjugateWitness w = lemma2_witness(a, cert.u, u4 * cert.c * r);
    const ResidueMat e12_bar = reduce_mat(w.target, q);
    ResidueMat product = residue_identity(q);
    std::array<ResidueMat, 4> conjugators;
    std::array<Core, 4> cores;
    for (std::size_t i = 0; i < 4; ++i) {
      conjugators[i] = evaluate_mod(w.factors[i].conjugator, q);
      cores[i] = w.factors[i].core;
      const ResidueMat core = cores[i] == Core::A ? a_bar : residue_inverse(q, a_bar);
      product = residue_mul(q, product,
                            residue_mul(q, residue_mul(q, conjugators[i], core), residue_inverse(q, conjugators[i])));
    }
    ResidueMat expected = residue_identity(q);
    expected.e[1] = j_bar;
    const std::uint32_t norm = norms.lengths[group.elementary12(j_bar)];
    BoundSample sample{r, j, norm, conjugators, cores, product == expected && e12_bar == expected};
    report.histogram[norm] += 1;
    report.max_norm = std::max(report.max_norm, norm);
    if (sample.passed()) ++report.passed;
    report.samples.push_back(std::move(sample));
  }
  if (report.samples.empty()) {
    throw Error(Errc::DegenerateQuotient, "no sampled j has a nontrivial image in " + q.describe());
  }
  return report;
}

}  // namespace sl2cert
