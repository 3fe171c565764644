#pragma once

// Independent brute-force references. Nothing here goes through the
// convolution engine: sums are enumerated outcome by outcome.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "antidice/die.hpp"
#include "antidice/dominance.hpp"
#include "antidice/lattice.hpp"

namespace antidice::testing {

using SumCounts = std::map<Rational, BigInt>;

/// Counts of every k-roll sum, enumerating all m^k ordered outcomes.
inline SumCounts brute_sums(const Die& die, unsigned k) {
  const auto& faces = die.faces();
  const std::size_t m = faces.size();
  std::vector<std::size_t> idx(k, 0);
  SumCounts out;
  while (true) {
    Rational s = 0;
    for (std::size_t i : idx) s += faces[i];
    out[s] += 1;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == m) idx[pos++] = 0;
    if (pos == k) break;
  }
  if (k == 0) out = {{Rational(0), BigInt(1)}};
  return out;
}

/// Relation of A against B after k rolls, by pairing every sum of A with
/// every sum of B.
inline Relation brute_compare(const Die& a, const Die& b, unsigned k) {
  const SumCounts sa = brute_sums(a, k);
  const SumCounts sb = brute_sums(b, k);
  BigInt wins = 0, losses = 0;
  for (const auto& [x, cx] : sa) {
    for (const auto& [y, cy] : sb) {
      if (x > y) wins += cx * cy;
      else if (x < y) losses += cx * cy;
    }
  }
  if (wins > losses) return Relation::win;
  if (wins < losses) return Relation::loss;
  return Relation::tie;
}

inline DominanceSequence brute_sequence(const Die& a, const Die& b, unsigned kmax) {
  DominanceSequence seq;
  for (unsigned k = 1; k <= kmax; ++k) seq.push_back(brute_compare(a, b, k));
  return seq;
}

/// Nonzero weights of a lattice distribution keyed by value.
inline std::map<std::int64_t, BigInt> as_map(const LatticeDistribution& d) {
  std::map<std::int64_t, BigInt> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.weights()[i] != 0) out[d.offset() + static_cast<std::int64_t>(i)] = d.weights()[i];
  }
  return out;
}

/// Textbook double loop over two sparse maps.
inline std::map<std::int64_t, BigInt> naive_convolve(const std::map<std::int64_t, BigInt>& a,
                                                    const std::map<std::int64_t, BigInt>& b) {
  std::map<std::int64_t, BigInt> out;
  for (const auto& [x, wx] : a) {
    for (const auto& [y, wy] : b) out[x + y] += wx * wy;
  }
  return out;
}

inline std::map<std::int64_t, BigInt> naive_power(const LatticeDistribution& d, unsigned k) {
  std::map<std::int64_t, BigInt> acc{{0, BigInt(1)}};
  const auto base = as_map(d);
  for (unsigned i = 0; i < k; ++i) acc = naive_convolve(acc, base);
  return acc;
}

/// Integer faces in [-range, range].
inline Die random_integer_die(std::mt19937_64& rng, int max_faces, int range) {
  std::uniform_int_distribution<int> count(1, max_faces);
  std::uniform_int_distribution<int> value(-range, range);
  std::vector<Rational> faces(static_cast<std::size_t>(count(rng)));
  for (auto& f : faces) f = value(rng);
  return Die(std::move(faces));
}

/// Faces p/q with |p| <= range and q in [1, max_den].
inline Die random_rational_die(std::mt19937_64& rng, int max_faces, int range, int max_den) {
  std::uniform_int_distribution<int> count(1, max_faces);
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, max_den);
  std::vector<Rational> faces(static_cast<std::size_t>(count(rng)));
  for (auto& f : faces) f = ratio(num(rng), den(rng));
  return Die(std::move(faces));
}

// Enumerates all 5^k face sequences of family_die(x) (faces indexed
// x, 5, 3, -9, 1-x) and keeps those with as many x faces as 1-x faces.
inline std::map<std::int64_t, BigInt> brute_conditional(unsigned k) {
  const std::int64_t fixed[3] = {5, 3, -9};
  std::vector<int> idx(k, 0);
  std::map<std::int64_t, BigInt> out;
  while (true) {
    int nx = 0, ny = 0;
    std::int64_t sum = 0;
    for (int i : idx) {
      if (i == 0) ++nx;
      else if (i == 4) ++ny;
      else sum += fixed[i - 1];
    }
    if (nx == ny) out[sum + ny] += 1;  // each matched pair x + (1 - x) adds 1
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == 5) idx[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

inline const Die& david() {
  static const Die d = parse_die("1,1,4,4,5,6");
  return d;
}

inline const Die& goliath() {
  static const Die g = parse_die("0,1,2,6,6,6");
  return g;
}

}  // namespace antidice::testing
