#include "adelic/prime_set.hpp"

#include <algorithm>

#include "adelic/error.hpp"

namespace adelic {

namespace {

void check_members(PrimeBase base, const PrimeSet::Members& members) {
  if (base == PrimeBase::Finite &&
      std::any_of(members.begin(), members.end(), [](const auto& p) { return p.is_infinity(); })) {
    fail(ErrorCode::InvalidArgument, "infinity is not a member of the finite primes");
  }
}

// Excluded places of a cofinite set, read inside the extended universe.
PrimeSet::Members extended_complement(const PrimeSet& s) {
  PrimeSet::Members out = s.listed();
  if (s.base() == PrimeBase::Finite) out.insert(ExtendedPrime::infinity());
  return out;
}

}  // namespace

PrimeSet PrimeSet::finite(PrimeBase base, Members members) {
  check_members(base, members);
  return PrimeSet(base, false, std::move(members));
}

PrimeSet PrimeSet::cofinite(PrimeBase base, Members excluded) {
  check_members(base, excluded);
  return PrimeSet(base, true, std::move(excluded));
}

bool PrimeSet::contains(const ExtendedPrime& p) const {
  if (p.is_infinity() && base_ == PrimeBase::Finite) return false;
  return cofinite_ != listed_.contains(p);
}

bool PrimeSet::intersects(const Members& places) const {
  return std::any_of(places.begin(), places.end(), [&](const auto& p) { return contains(p); });
}

bool PrimeSet::is_subset_of(const PrimeSet& other) const {
  if (!cofinite_) {
    return std::all_of(listed_.begin(), listed_.end(),
                       [&](const auto& p) { return other.contains(p); });
  }
  // A cofinite set is infinite, so it only fits inside another cofinite set
  // whose exclusions it also excludes.
  if (!other.cofinite_) return false;
  Members mine = extended_complement(*this);
  Members theirs = extended_complement(other);
  return std::includes(mine.begin(), mine.end(), theirs.begin(), theirs.end());
}

PrimeSet PrimeSet::with_base(PrimeBase base) const {
  if (base == base_) return *this;
  if (base == PrimeBase::Finite) {
    Members listed = listed_;
    listed.erase(ExtendedPrime::infinity());
    return PrimeSet(base, cofinite_, std::move(listed));
  }
  // Finite -> extended keeps the same set of places, so infinity stays out.
  if (cofinite_) return PrimeSet(base, true, extended_complement(*this));
  return PrimeSet(base, false, listed_);
}

std::string PrimeSet::to_string() const {
  std::string out = cofinite_ ? "cofinite{" : "{";
  bool first = true;
  for (const auto& p : listed_) {
    if (!first) out += ",";
    out += p.to_string();
    first = false;
  }
  return out + "}";
}

}  // namespace adelic
