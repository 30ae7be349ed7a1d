#pragma once

// Data-parallel kernels. Each has a plain serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp`; both produce
// bitwise identical results (tests/kernels_test.cpp), and bench/ times them
// against each other. Library code calls the OpenMP versions.

#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

#include <omp.h>

#include "wavefill/costate.hpp"

namespace wavefill::kernels {

struct ArgMax {
  bool found = false;
  std::size_t index = 0;
  double value = 0.0;
  std::size_t feasible = 0;
};

/// Deterministic merge: larger value wins, ties go to the smaller index.
inline void merge(ArgMax& into, const ArgMax& other) {
  into.feasible += other.feasible;
  if (!other.found) return;
  if (!into.found || other.value > into.value ||
      (other.value == into.value && other.index < into.index)) {
    into.found = true;
    into.index = other.index;
    into.value = other.value;
  }
}

namespace serial {

/// Samples of g(t) = scale * h(t) at t_k = k T / intervals, k = 0..intervals.
std::vector<double> sample_signal(const ChannelProfile& profile, double scale, int intervals);

/// Best of `score(k)` over k in [0, count); nullopt or NaN marks k infeasible.
template <class Score>
ArgMax argmax_feasible(std::size_t count, Score&& score) {
  ArgMax best;
  for (std::size_t k = 0; k < count; ++k) {
    const std::optional<double> v = score(k);
    if (!v || std::isnan(*v)) continue;
    merge(best, ArgMax{true, k, *v, 1});
  }
  return best;
}

/// out[k] = fn(k).
template <class Fn>
auto map_indexed(std::size_t count, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(fn(k));
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> sample_signal(const ChannelProfile& profile, double scale, int intervals);

template <class Score>
ArgMax argmax_feasible(std::size_t count, Score&& score) {
  ArgMax best;
#pragma omp parallel
  {
    ArgMax local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
      const std::optional<double> v = score(static_cast<std::size_t>(k));
      if (!v || std::isnan(*v)) continue;
      merge(local, ArgMax{true, static_cast<std::size_t>(k), *v, 1});
    }
#pragma omp critical(wavefill_argmax_merge)
    merge(best, local);
  }
  return best;
}

template <class Fn>
auto map_indexed(std::size_t count, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  // Exceptions must not escape a parallel region; the lowest-index one is
  // rethrown, matching what the serial loop would throw first.
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
    try {
      slots[static_cast<std::size_t>(k)].emplace(fn(static_cast<std::size_t>(k)));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace omp

}  // namespace wavefill::kernels
