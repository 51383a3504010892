#pragma once

// Corpus BLEU and mean per-joint position error.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aslgloss/error.hpp"
#include "aslgloss/skeleton.hpp"

namespace aslgloss {

using Tokens = std::vector<std::string>;

enum class BleuMode {
  Cumulative,  // geometric mean of orders 1..max_n
  Individual,  // order max_n only
};
enum class BleuSmoothing {
  None,
  AddOne,  // +1 to matches and totals for orders >= 2
};

struct BleuOptions {
  std::size_t max_n = 4;
  BleuMode mode = BleuMode::Cumulative;
  BleuSmoothing smoothing = BleuSmoothing::None;
};

struct BleuReport {
  double bleu = 0.0;
  std::vector<double> per_n_precision;   // index n-1; NaN for orders with no candidate n-grams
  std::vector<std::size_t> matches;      // clipped n-gram matches per order
  std::vector<std::size_t> totals;       // candidate n-grams per order
  double brevity_penalty = 1.0;
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
};

namespace detail {

struct NgramLess {
  bool operator()(std::span<const std::string> a, std::span<const std::string> b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

using NgramCounts = std::map<std::span<const std::string>, std::size_t, NgramLess>;

// Views into `tokens`; the result must not outlive it.
inline NgramCounts count_ngrams(const Tokens& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) ++counts[std::span<const std::string>(tokens).subspan(i, n)];
  return counts;
}

}  // namespace detail

/// Corpus-level BLEU with per-reference clipping. Each candidate may have
/// several references; the brevity penalty uses the reference length closest
/// to each candidate (shorter wins ties). Orders with no candidate n-grams in
/// the whole corpus are left out of the geometric mean.
inline BleuReport bleu(const std::vector<Tokens>& candidates, const std::vector<std::vector<Tokens>>& references,
                       const BleuOptions& options = {}) {
  if (candidates.size() != references.size())
    throw Error(ErrorCode::LengthMismatch, "candidate and reference counts differ");
  if (candidates.empty()) throw Error(ErrorCode::EmptyCorpus, "no sentence pairs");
  if (options.max_n == 0) throw Error(ErrorCode::InvalidArgument, "max_n must be >= 1");

  const std::size_t N = options.max_n;
  BleuReport r;
  r.matches.assign(N, 0);
  r.totals.assign(N, 0);

  for (std::size_t s = 0; s < candidates.size(); ++s) {
    const auto& cand = candidates[s];
    const auto& refs = references[s];
    if (refs.empty()) throw Error(ErrorCode::InvalidArgument, "sentence " + std::to_string(s) + " has no reference");
    r.candidate_length += cand.size();
    std::size_t closest = refs.front().size();
    for (const auto& ref : refs) {
      const auto diff = [&](std::size_t len) { return len > cand.size() ? len - cand.size() : cand.size() - len; };
      if (diff(ref.size()) < diff(closest) || (diff(ref.size()) == diff(closest) && ref.size() < closest))
        closest = ref.size();
    }
    r.reference_length += closest;

    for (std::size_t n = 1; n <= N; ++n) {
      const auto cand_counts = detail::count_ngrams(cand, n);
      std::vector<detail::NgramCounts> ref_counts;
      ref_counts.reserve(refs.size());
      for (const auto& ref : refs) ref_counts.push_back(detail::count_ngrams(ref, n));
      for (const auto& [gram, count] : cand_counts) {
        std::size_t max_ref = 0;
        for (const auto& rc : ref_counts) {
          auto it = rc.find(gram);
          if (it != rc.end()) max_ref = std::max(max_ref, it->second);
        }
        r.matches[n - 1] += std::min(count, max_ref);
        r.totals[n - 1] += count;
      }
    }
  }

  r.per_n_precision.assign(N, std::nan(""));
  double log_sum = 0.0;
  std::size_t used = 0;
  bool zero = false;
  const std::size_t first = options.mode == BleuMode::Individual ? N : 1;
  for (std::size_t n = 1; n <= N; ++n) {
    if (r.totals[n - 1] == 0) continue;
    double m = static_cast<double>(r.matches[n - 1]);
    double t = static_cast<double>(r.totals[n - 1]);
    if (options.smoothing == BleuSmoothing::AddOne && n >= 2) {
      m += 1.0;
      t += 1.0;
    }
    const double p = m / t;
    r.per_n_precision[n - 1] = p;
    if (n < first) continue;
    ++used;
    if (p == 0.0)
      zero = true;
    else
      log_sum += std::log(p);
  }

  const double c = static_cast<double>(r.candidate_length);
  const double ref_len = static_cast<double>(r.reference_length);
  if (r.candidate_length == 0)
    r.brevity_penalty = r.reference_length == 0 ? 1.0 : 0.0;
  else
    r.brevity_penalty = c < ref_len ? std::exp(1.0 - ref_len / c) : 1.0;

  if (used == 0 || zero)
    r.bleu = 0.0;
  else
    r.bleu = r.brevity_penalty * std::exp(log_sum / static_cast<double>(used));
  return r;
}

/// Single-reference convenience overload.
inline BleuReport bleu(const std::vector<Tokens>& candidates, const std::vector<Tokens>& references,
                       const BleuOptions& options = {}) {
  std::vector<std::vector<Tokens>> refs;
  refs.reserve(references.size());
  for (const auto& r : references) refs.push_back({r});
  return bleu(candidates, refs, options);
}

struct MpjpeReport {
  double mpjpe = 0.0;
  std::vector<double> per_joint;
  std::vector<double> per_frame;
};

/// Mean Euclidean distance over all (frame, joint) pairs. Frames are any
/// random-access range of Vec3 (e.g. Pose).
template <class Frame>
MpjpeReport mpjpe(std::span<const Frame> predicted, std::span<const Frame> truth) {
  if (predicted.size() != truth.size() || predicted.empty())
    throw Error(ErrorCode::ShapeMismatch, "mpjpe: frame counts " + std::to_string(predicted.size()) + " vs " +
                                              std::to_string(truth.size()));
  const std::size_t joints = std::size(predicted[0]);
  if (joints == 0) throw Error(ErrorCode::ShapeMismatch, "mpjpe: frames have no joints");
  MpjpeReport r;
  r.per_joint.assign(joints, 0.0);
  r.per_frame.assign(predicted.size(), 0.0);
  double total = 0.0;
  for (std::size_t f = 0; f < predicted.size(); ++f) {
    if (std::size(predicted[f]) != joints || std::size(truth[f]) != joints)
      throw Error(ErrorCode::ShapeMismatch, "mpjpe: joint counts differ at frame " + std::to_string(f));
    double frame_sum = 0.0;
    for (std::size_t j = 0; j < joints; ++j) {
      const double d = distance(predicted[f][j], truth[f][j]);
      r.per_joint[j] += d;
      frame_sum += d;
    }
    r.per_frame[f] = frame_sum / static_cast<double>(joints);
    total += frame_sum;
  }
  for (auto& v : r.per_joint) v /= static_cast<double>(predicted.size());
  r.mpjpe = total / static_cast<double>(predicted.size() * joints);
  return r;
}

template <class Frame>
MpjpeReport mpjpe(const std::vector<Frame>& predicted, const std::vector<Frame>& truth) {
  return mpjpe(std::span<const Frame>(predicted), std::span<const Frame>(truth));
}

}  // namespace aslgloss
