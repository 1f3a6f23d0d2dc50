#pragma once

#include <compare>
#include <set>
#include <string>

#include "adelic/padic.hpp"

namespace adelic {

/// Universe a prime set lives in: the finite primes P, or P together with infinity.
enum class PrimeBase { Finite, Extended };

/// A finite or cofinite subset of the (extended) primes.
class PrimeSet {
 public:
  using Members = std::set<ExtendedPrime>;

  static PrimeSet finite(PrimeBase base, Members members);
  static PrimeSet cofinite(PrimeBase base, Members excluded);
  static PrimeSet empty(PrimeBase base) { return finite(base, {}); }
  static PrimeSet all(PrimeBase base) { return cofinite(base, {}); }

  PrimeBase base() const noexcept { return base_; }
  bool is_cofinite() const noexcept { return cofinite_; }
  /// Members of a finite set, or the excluded places of a cofinite one.
  const Members& listed() const noexcept { return listed_; }

  bool contains(const ExtendedPrime& p) const;
  bool is_empty() const noexcept { return !cofinite_ && listed_.empty(); }
  bool is_all() const noexcept { return cofinite_ && listed_.empty(); }

  /// Set inclusion, comparing both sides as sets of places.
  bool is_subset_of(const PrimeSet& other) const;
  bool intersects(const Members& places) const;

  PrimeSet with_base(PrimeBase base) const;

  std::string to_string() const;

  auto operator<=>(const PrimeSet&) const = default;

 private:
  PrimeSet(PrimeBase base, bool cofinite, Members listed)
      : base_(base), cofinite_(cofinite), listed_(std::move(listed)) {}

  PrimeBase base_;
  bool cofinite_;
  Members listed_;
};

}  // namespace adelic
