#pragma once

// Nearest-vocabulary word mapping by cosine similarity over static word
// vectors (word2vec text format).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aslgloss/error.hpp"
#include "aslgloss/textnorm.hpp"
#include "aslgloss/unicode.hpp"

namespace aslgloss {

/// Source of word vectors. Implementations must be safe for concurrent reads.
class VectorProvider {
 public:
  virtual ~VectorProvider() = default;
  virtual std::size_t dimension() const = 0;
  /// Unit-length vector for `word`, or an empty span when unknown.
  virtual std::span<const double> unit_vector(std::string_view word) const = 0;
  /// Raw (unnormalized) vector for `word`, or an empty span when unknown.
  virtual std::span<const double> vector(std::string_view word) const = 0;
};

struct EmbeddingLoadStats {
  std::size_t header_count = 0;
  std::size_t loaded = 0;
  std::size_t dimension_mismatch = 0;
  std::size_t zero_vectors = 0;
  std::size_t malformed = 0;
  std::size_t filtered_out = 0;
  std::vector<long long> mismatch_lines;
};

namespace detail {

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

class EmbeddingTable final : public VectorProvider {
 public:
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
  }

  /// Adds a vector; returns false (and stores nothing) for a wrong length or
  /// an all-zero vector.
  bool add(std::string word, std::vector<double> values) {
    if (values.size() != dimension_) return false;
    const double scale = detail::max_abs(values);
    if (!(scale > 0.0) || !std::isfinite(scale)) return false;
    double norm2 = 0.0;
    for (double v : values) norm2 += (v / scale) * (v / scale);
    const double norm = std::sqrt(norm2);
    Entry e;
    e.raw = std::move(values);
    e.unit.reserve(dimension_);
    for (double v : e.raw) e.unit.push_back(v / scale / norm);
    entries_.insert_or_assign(std::move(word), std::move(e));
    return true;
  }

  std::size_t dimension() const override { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(std::string_view w) const { return entries_.find(w) != entries_.end(); }

  std::span<const double> unit_vector(std::string_view word) const override {
    auto it = entries_.find(word);
    return it == entries_.end() ? std::span<const double>{} : std::span<const double>(it->second.unit);
  }
  std::span<const double> vector(std::string_view word) const override {
    auto it = entries_.find(word);
    return it == entries_.end() ? std::span<const double>{} : std::span<const double>(it->second.raw);
  }

  EmbeddingLoadStats stats;

 private:
  struct Entry {
    std::vector<double> raw;
    std::vector<double> unit;
  };
  std::size_t dimension_;
  std::unordered_map<std::string, Entry, detail::StringHash, std::equal_to<>> entries_;
};

namespace detail {

inline bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_size(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Loads `count dimension` followed by `word v1 ... vd` rows. Rows of the
/// wrong length, unparsable rows and all-zero vectors are skipped and
/// counted in `stats`. With `keep`, only listed words are retained.
inline EmbeddingTable load_embeddings(std::istream& in, const WordSet* keep = nullptr) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "empty embedding file");
  auto header = detail::split_ws(line);
  std::size_t count = 0, dim = 0;
  if (header.size() != 2 || !detail::parse_size(header[0], count) || !detail::parse_size(header[1], dim) || dim == 0)
    throw Error(ErrorCode::MalformedHeader, "expected 'count dimension', got '" + line + "'");

  EmbeddingTable table(dim);
  table.stats.header_count = count;
  long long lineno = 1;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = detail::split_ws(line);
    if (fields.empty()) continue;
    std::string word = fields[0];
    unicode::ascii_lower_inplace(word);
    if (keep && !keep->contains(word)) {
      ++table.stats.filtered_out;
      continue;
    }
    if (fields.size() - 1 != dim) {
      ++table.stats.dimension_mismatch;
      table.stats.mismatch_lines.push_back(lineno);
      continue;
    }
    values.assign(dim, 0.0);
    bool ok = true;
    for (std::size_t k = 0; k < dim && ok; ++k) ok = detail::parse_double(fields[k + 1], values[k]);
    if (!ok) {
      ++table.stats.malformed;
      continue;
    }
    if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
      ++table.stats.zero_vectors;
      continue;
    }
    if (table.add(std::move(word), values)) ++table.stats.loaded;
  }
  return table;
}

inline EmbeddingTable load_embeddings(const std::filesystem::path& path, const WordSet* keep = nullptr) {
  auto in = detail::open_input(path);
  return load_embeddings(in, keep);
}

/// dot(a, b) / (|a| |b|), clamped to [-1, 1].
inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "cosine_similarity: vector lengths differ");
  const double sa = detail::max_abs(a), sb = detail::max_abs(b);
  if (sa == 0.0 || sb == 0.0) throw Error(ErrorCode::ZeroVector, "cosine_similarity: zero vector");
  // Rescaling by the largest component keeps tiny or huge vectors from
  // underflowing or overflowing the sums.
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] / sa, y = b[i] / sb;
    dot += x * y;
    aa += x * x;
    bb += y * y;
  }
  return std::clamp(dot / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

enum class MappingMethod { ExactMatch, Similarity, FingerspellFallback };

inline const char* to_string(MappingMethod m) {
  switch (m) {
    case MappingMethod::ExactMatch: return "exact";
    case MappingMethod::Similarity: return "similarity";
    case MappingMethod::FingerspellFallback: return "fingerspell";
  }
  return "fingerspell";
}

struct MappingResult {
  std::string source;
  std::string gloss;  // vocabulary word, or "fs-WORD" on fallback
  double score = 0.0;
  MappingMethod method = MappingMethod::FingerspellFallback;
};

struct MappingOptions {
  // Best scores below the floor fall back to fingerspelling. -1 disables it.
  double similarity_floor = 0.35;
  // Scores within this distance of the best are ties; the smaller word wins.
  double tie_epsilon = 1e-12;
};

/// Sorted vocabulary words that have vectors, with their unit vectors cached.
class VocabularyIndex {
 public:
  template <class Words>
  VocabularyIndex(const Words& vocabulary, const VectorProvider& vectors) : vectors_(&vectors) {
    for (const auto& w : vocabulary) {
      std::string word(w);
      vocabulary_.insert(word);
      if (!vectors.unit_vector(word).empty()) words_.push_back(std::move(word));
    }
    std::sort(words_.begin(), words_.end());
  }

  MappingResult map(std::string_view token, const MappingOptions& options = {}) const {
    MappingResult r;
    r.source = std::string(token);
    if (vocabulary_.contains(token)) {
      r.gloss = r.source;
      r.score = 1.0;
      r.method = MappingMethod::ExactMatch;
      return r;
    }
    r.gloss = "fs-" + unicode::to_upper(token);
    const auto query = vectors_->unit_vector(token);
    if (query.empty() || words_.empty()) return r;

    const std::string* best = nullptr;
    double best_score = -2.0;
    for (const auto& w : words_) {
      const auto v = vectors_->unit_vector(w);
      double dot = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) dot += query[i] * v[i];
      if (best == nullptr || dot > best_score + options.tie_epsilon) {
        best = &w;
        best_score = dot;
      }
    }
    r.score = cosine_similarity(vectors_->vector(token), vectors_->vector(*best));
    if (r.score < options.similarity_floor) return r;
    r.gloss = *best;
    r.method = MappingMethod::Similarity;
    return r;
  }

 private:
  const VectorProvider* vectors_;
  WordSet vocabulary_;
  std::vector<std::string> words_;
};

/// Exact vocabulary hit, else the most cosine-similar vocabulary word
/// (ties to the lexicographically smaller word), else fingerspelling.
template <class Words>
MappingResult map_to_gloss_vocab(std::string_view token, const VectorProvider& vectors, const Words& vocabulary,
                                 const MappingOptions& options = {}) {
  return VocabularyIndex(vocabulary, vectors).map(token, options);
}

}  // namespace aslgloss
