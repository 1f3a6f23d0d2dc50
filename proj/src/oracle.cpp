#include "adelic/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "adelic/error.hpp"

namespace adelic {

namespace {

constexpr std::uint64_t kMaxHeight = 10'000'000;

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_of(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

Integer ceil_of(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Key of the enumeration order.
struct Key {
  Integer height;
  Integer numerator;
  bool operator<(const Key& o) const {
    return height != o.height ? height < o.height : numerator < o.numerator;
  }
};

// The search problem with everything that does not depend on the candidate
// precomputed. A candidate n/d is accepted iff
//   * v_p(n a_p / d - c_p) >= l_p at every ball prime with a_p != 0,
//   * every prime of d lies in the window or has a_q = 0 or v_q(a_q) >= v_q(d)
//     (primes outside the balls need the latter anyway for integrality),
//   * q^{-v_q(a_q)} divides n at explicit primes outside the balls where a is
//     not integral,
//   * n a_inf / d lies in the interval for full adeles.
class Search {
 public:
  Search(const FiniteAdele& a, const Neighbourhood& v, const std::optional<Rational>& real,
         const SearchBudget& budget)
      : a_(a), real_(real), interval_(v.interval()), budget_(budget) {
    if (budget.height_bound < 1 || budget.precision < 1) {
      fail(ErrorCode::InvalidArgument, "search budget bounds must be at least 1");
    }
    if (budget.height_bound > kMaxHeight) {
      fail(ErrorCode::InvalidArgument, "height bound above 10^7");
    }
    for (const auto& [p, ball] : v.balls()) {
      Rational ap = a.component(p);
      if (ap == 0) {
        if (!ball_contains(ball, Rational(0))) impossible_ = true;
        continue;
      }
      balls_.push_back(BallTerm{p, valuation(ap, p).value(), ball.center / ap, ball.radius_exponent});
    }
    for (const auto& [p, x] : a.explicit_components()) {
      if (v.balls().contains(p) || x == 0) continue;
      long vx = valuation(x, p).value();
      if (vx < 0) numerator_factor_ *= integer_power(p.value(), static_cast<unsigned long>(-vx));
    }
    if (real_ && *real_ == 0 && !interval_->contains(0)) impossible_ = true;

    smallest_factor_.assign(budget.height_bound + 1, 0);
    for (std::uint64_t i = 2; i <= budget.height_bound; ++i) {
      if (smallest_factor_[i] != 0) continue;
      for (std::uint64_t j = i; j <= budget.height_bound; j += i) {
        if (smallest_factor_[j] == 0) smallest_factor_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }

  std::optional<Rational> run() {
    if (impossible_) return std::nullopt;
    std::optional<Key> best;
    std::optional<Rational> found;
    const Integer h(static_cast<unsigned long>(budget_.height_bound));
    for (std::uint64_t d = 1; d <= budget_.height_bound; ++d) {
      if (best && Integer(static_cast<unsigned long>(d)) > best->height) break;
      std::optional<Integer> n = best_numerator(d, best ? best->height : h);
      if (!n) continue;
      Integer dz(static_cast<unsigned long>(d));
      Key key{std::max(Integer(abs(*n)), dz), *n};
      if (!best || key < *best) {
        best = key;
        found = make_rational(*n, dz);
      }
    }
    return found;
  }

 private:
  struct BallTerm {
    Prime prime;
    long valuation;  // of a_p
    Rational ratio;  // c_p / a_p
    long radius;
  };

  // Progression n0 + L Z of numerators for the denominator d, or nothing.
  std::optional<std::pair<Integer, Integer>> progression(std::uint64_t d) {
    const Integer dz(static_cast<unsigned long>(d));
    for (std::uint64_t rest = d; rest > 1;) {
      std::uint64_t q = smallest_factor_[rest];
      long e = 0;
      while (rest % q == 0) {
        rest /= q;
        ++e;
      }
      if (!denominator_prime_ok(Prime(q), e)) return std::nullopt;
    }
    std::vector<Congruence> system;
    Integer lcm = 1;
    for (const BallTerm& b : balls_) {
      // v_p(n a_p / d - c_p) >= l  <=>  v_p(n - d c_p / a_p) >= l + v_p(d) - v_p(a_p).
      long k = b.radius + valuation(dz, b.prime).value() - b.valuation;
      Rational target = b.ratio * Rational(dz);
      // Integers cannot cancel a fractional part of the target.
      if (target != 0 && valuation(target, b.prime) < Valuation(std::min(k, 0L))) return std::nullopt;
      if (k <= 0) continue;
      Integer pk = integer_power(b.prime.value(), static_cast<unsigned long>(k));
      system.push_back(Congruence{target == 0 ? Integer(0) : residue_mod(target, b.prime, pk), pk});
      lcm *= pk;
    }
    if (numerator_factor_ != 1) {
      system.push_back(Congruence{0, numerator_factor_});
      lcm *= numerator_factor_;
    }
    Integer n0 = crt_solve(system);
    // A prime of d that divides every candidate rules d out.
    for (std::uint64_t rest = d; rest > 1;) {
      std::uint64_t q = smallest_factor_[rest];
      while (rest % q == 0) rest /= q;
      Integer qz(static_cast<unsigned long>(q));
      if (lcm % qz == 0 && n0 % qz == 0) return std::nullopt;
    }
    return std::make_pair(n0, lcm);
  }

  bool denominator_prime_ok(const Prime& q, long e) {
    auto it = component_valuation_.find(q.value());
    if (it == component_valuation_.end()) {
      it = component_valuation_.emplace(q.value(), a_.valuation_at(q)).first;
    }
    const Valuation& vq = it->second;
    const bool in_ball = std::any_of(balls_.begin(), balls_.end(), [&](const BallTerm& b) { return b.prime == q; });
    const bool allowed = budget_.prime_window.contains(q) || vq > Valuation(0);
    if (!allowed) return false;
    // Outside the balls the component r a_q must stay integral.
    return in_ball || vq >= Valuation(e);
  }

  // Inclusive numerator range for the denominator d.
  std::optional<std::pair<Integer, Integer>> numerator_range(std::uint64_t d, const Integer& cap) const {
    Integer lo = real_ ? Integer(-cap) : Integer(1);
    Integer hi = cap;
    if (real_ && *real_ != 0) {
      const Rational dz(static_cast<unsigned long>(d));
      Rational x = interval_->lower * dz / *real_;
      Rational y = interval_->upper * dz / *real_;
      if (*real_ < 0) std::swap(x, y);
      lo = std::max(lo, Integer(floor_of(x) + 1));
      hi = std::min(hi, Integer(ceil_of(y) - 1));
    }
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
  }

  // First valid numerator from `start` in direction `dir`, staying inside
  // [lo, hi] and not passing `stop`.
  std::optional<Integer> first_valid(Integer start, int dir, const Integer& n0, const Integer& modulus,
                                     const Integer& lo, const Integer& hi, const Integer& stop,
                                     const Integer& d) const {
    Integer n;
    if (dir > 0) {
      n = n0 + modulus * floor_div(start - n0 + modulus - 1, modulus);
    } else {
      n = n0 + modulus * floor_div(start - n0, modulus);
    }
    for (; lo <= n && n <= hi && (dir > 0 ? n <= stop : n >= stop); n += dir * modulus) {
      if (n == 0) continue;
      Integer g;
      mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
      if (g == 1) return n;
    }
    return std::nullopt;
  }

  // Least-key numerator for d among candidates of height at most cap.
  std::optional<Integer> best_numerator(std::uint64_t d, const Integer& cap) {
    auto range = numerator_range(d, cap);
    if (!range) return std::nullopt;
    auto prog = progression(d);
    if (!prog) return std::nullopt;
    const auto& [lo, hi] = *range;
    const auto& [n0, modulus] = *prog;
    const Integer dz(static_cast<unsigned long>(d));

    // Height d: the smallest valid numerator with |n| <= d.
    if (auto n = first_valid(std::max(lo, Integer(-dz)), 1, n0, modulus, lo, hi, dz, dz)) return n;

    // Larger heights: nearest valid numerator on either side, negative on ties.
    auto pos = first_valid(std::max(lo, Integer(dz + 1)), 1, n0, modulus, lo, hi, cap, dz);
    auto neg = first_valid(std::min(hi, Integer(-dz - 1)), -1, n0, modulus, lo, hi, Integer(-cap), dz);
    if (pos && neg) return abs(*neg) <= *pos ? neg : pos;
    return pos ? pos : neg;
  }

  const FiniteAdele& a_;
  std::optional<Rational> real_;
  std::optional<RealInterval> interval_;
  const SearchBudget& budget_;
  bool impossible_ = false;
  std::vector<BallTerm> balls_;
  Integer numerator_factor_ = 1;
  std::vector<std::uint32_t> smallest_factor_;
  std::unordered_map<std::uint64_t, Valuation> component_valuation_;
};

}  // namespace

std::optional<Rational> witness_by_search(const FiniteAdele& a, const Neighbourhood& v,
                                          const SearchBudget& budget) {
  if (v.interval()) fail(ErrorCode::InvalidArgument, "finite-adele neighbourhoods carry no interval");
  std::optional<Rational> r = Search(a, v, std::nullopt, budget).run();
  if (r && !v.contains(scale(*r, a))) throw std::logic_error("search result failed exact verification");
  return r;
}

std::optional<Rational> witness_by_search(const FullAdele& a, const Neighbourhood& v,
                                          const SearchBudget& budget) {
  if (!v.interval()) fail(ErrorCode::InvalidArgument, "full-adele neighbourhoods need an interval");
  std::optional<Rational> r = Search(a.finite_part(), v, a.real_part(), budget).run();
  if (r && !v.contains(scale(*r, a))) throw std::logic_error("search result failed exact verification");
  return r;
}

std::optional<Rational> witness_by_search(const Adele& a, const Neighbourhood& v, const SearchBudget& budget) {
  return std::visit([&](const auto& x) { return witness_by_search(x, v, budget); }, a);
}

std::vector<PrimeSet> window_closure(const std::vector<PrimeSet>& points, const std::set<ExtendedPrime>& window) {
  const std::vector<ExtendedPrime> places(window.begin(), window.end());
  if (places.size() > 20) fail(ErrorCode::InvalidArgument, "window too large to enumerate");
  PrimeBase base = points.empty() ? (window.contains(ExtendedPrime::infinity()) ? PrimeBase::Extended
                                                                                   : PrimeBase::Finite)
                                  : points.front().base();
  const std::uint32_t subsets = 1u << places.size();

  std::vector<std::uint32_t> projected;
  for (const PrimeSet& s : points) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < places.size(); ++i) {
      if (s.contains(places[i])) mask |= 1u << i;
    }
    projected.push_back(mask);
  }

  std::vector<PrimeSet> out;
  for (std::uint32_t t = 0; t < subsets; ++t) {
    bool in_closure = true;
    for (std::uint32_t g = 0; g < subsets && in_closure; ++g) {
      if ((t & g) != 0) continue;  // U_G does not contain T
      in_closure = std::any_of(projected.begin(), projected.end(), [&](std::uint32_t s) { return (s & g) == 0; });
    }
    if (!in_closure) continue;
    PrimeSet::Members members;
    for (std::size_t i = 0; i < places.size(); ++i) {
      if (t & (1u << i)) members.insert(places[i]);
    }
    out.push_back(PrimeSet::finite(base, std::move(members)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace adelic
