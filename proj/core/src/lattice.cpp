#include "antidice/lattice.hpp"

#include <algorithm>
#include <map>

#include "antidice/errors.hpp"

namespace antidice {

namespace {

const BigInt& zero_weight() {
  static const BigInt zero = 0;
  return zero;
}

}  // namespace

LatticeDistribution::LatticeDistribution(std::int64_t offset, std::vector<BigInt> weights)
    : offset_(offset), weights_(std::move(weights)), total_(0) {
  std::size_t first = 0;
  while (first < weights_.size() && weights_[first] == 0) ++first;
  if (first == weights_.size()) throw DomainError("distribution has no positive weight");
  std::size_t last = weights_.size();
  while (weights_[last - 1] == 0) --last;
  if (first > 0 || last < weights_.size()) {
    weights_ = std::vector<BigInt>(std::make_move_iterator(weights_.begin() + first),
                                   std::make_move_iterator(weights_.begin() + last));
    offset_ += static_cast<std::int64_t>(first);
  }
  for (const BigInt& w : weights_) {
    if (w < 0) throw DomainError("negative weight in distribution");
    total_ += w;
  }
}

LatticeDistribution::LatticeDistribution(Trusted, std::int64_t offset, std::vector<BigInt> weights,
                                         BigInt total)
    : offset_(offset), weights_(std::move(weights)), total_(std::move(total)) {}

LatticeDistribution make_trusted_distribution(std::int64_t offset, std::vector<BigInt> weights,
                                              BigInt total) {
  return LatticeDistribution(LatticeDistribution::Trusted{}, offset, std::move(weights),
                             std::move(total));
}

LatticeDistribution LatticeDistribution::delta(std::int64_t value) {
  return LatticeDistribution(value, std::vector<BigInt>{BigInt(1)});
}

const BigInt& LatticeDistribution::weight_at(std::int64_t value) const {
  if (value < min_value() || value > max_value()) return zero_weight();
  return weights_[static_cast<std::size_t>(value - offset_)];
}

Rational LatticeDistribution::probability(std::int64_t value) const {
  Rational p(weight_at(value), total_);
  p.canonicalize();
  return p;
}

Rational LatticeDistribution::raw_moment(unsigned k) const {
  BigInt sum = 0;
  BigInt term;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 0) continue;
    const BigInt v(static_cast<long>(offset_ + static_cast<std::int64_t>(i)));
    mpz_pow_ui(term.get_mpz_t(), v.get_mpz_t(), k);
    sum += term * weights_[i];
  }
  Rational out(sum, total_);
  out.canonicalize();
  return out;
}

Rational LatticeDistribution::mean() const { return raw_moment(1); }

Rational LatticeDistribution::central_moment(unsigned k) const {
  const Rational mu = mean();
  Rational sum = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 0) continue;
    const Rational d = Rational(static_cast<long>(offset_ + static_cast<std::int64_t>(i))) - mu;
    Rational p = 1;
    for (unsigned j = 0; j < k; ++j) p *= d;
    sum += p * Rational(weights_[i]);
  }
  return sum / Rational(total_);
}

std::size_t LatticeDistribution::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(weights_.begin(), weights_.end(), [](const BigInt& w) { return w != 0; }));
}

LatticeDistribution LatticeDistribution::negated() const {
  std::vector<BigInt> w(weights_.rbegin(), weights_.rend());
  return make_trusted_distribution(-max_value(), std::move(w), total_);
}

LatticeDistribution LatticeDistribution::shifted(std::int64_t c) const {
  return make_trusted_distribution(offset_ + c, weights_, total_);
}

LatticeDie to_lattice(const Die& die) {
  BigInt scale = 1;
  for (const Rational& f : die.faces()) scale = lcm(scale, f.get_den());
  std::map<std::int64_t, unsigned long> tally;
  for (const Rational& f : die.faces()) {
    const BigInt v = f.get_num() * (scale / f.get_den());
    ++tally[to_int64(v)];
  }
  const std::int64_t lo = tally.begin()->first;
  const std::int64_t hi = tally.rbegin()->first;
  const std::uint64_t width = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (width > (std::uint64_t{1} << 32)) {
    throw DomainError("die spans too wide a lattice (" + std::to_string(width) + " points)");
  }
  std::vector<BigInt> weights(static_cast<std::size_t>(width));
  for (const auto& [v, c] : tally) weights[static_cast<std::size_t>(v - lo)] = c;
  return LatticeDie{scale, LatticeDistribution(lo, std::move(weights))};
}

Die from_lattice(const LatticeDie& lattice) {
  std::vector<Rational> faces;
  const auto& d = lattice.dist;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const BigInt& w = d.weights()[i];
    if (!w.fits_ulong_p()) throw DomainError("weight too large to expand into faces");
    Rational f(BigInt(static_cast<long>(d.offset() + static_cast<std::int64_t>(i))), lattice.scale);
    f.canonicalize();
    for (unsigned long c = 0; c < w.get_ui(); ++c) faces.push_back(f);
  }
  return Die(std::move(faces));
}

}  // namespace antidice
