#pragma once

// Fixtures and independent reference implementations shared by the unit
// tests and the acceptance runner. The oracles deliberately avoid the
// library's own algorithms: dense elimination instead of the tridiagonal
// sweep, vector-keyed n-gram maps instead of span views, plain loops for
// MPJPE.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "aslgloss/aslgloss.hpp"

namespace testkit {

namespace fs = std::filesystem;
using namespace aslgloss;

inline fs::path data_dir() { return ASLGLOSS_TEST_DATA_DIR; }
inline fs::path fixture_dir() { return ASLGLOSS_TEST_FIXTURE_DIR; }

inline const Lexicon& bundled_lexicon() {
  static const Lexicon lex = load_lexicon(data_dir() / "lexicon.tsv");
  return lex;
}

inline Lexicon lexicon_from(const std::string& text) {
  std::istringstream in(text);
  return parse_lexicon(in);
}

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("aslgloss_test_" + std::to_string(rd()) + "_" + std::to_string(counter.fetch_add(1)));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- poses and clips -------------------------------------------------------

inline Pose random_pose(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Pose p;
  for (auto& v : p) v = {u(rng), u(rng), u(rng)};
  // Keep shoulders well apart so normalization is well conditioned.
  p[joints::kLeftShoulder] = {-0.5 * scale + 0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng)};
  p[joints::kRightShoulder] = {0.5 * scale + 0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng)};
  return p;
}

inline Pose constant_pose(double v) {
  Pose p;
  for (auto& j : p) j = {v, v, v};
  return p;
}

/// Clip whose coordinate (j, axis) at frame f is fn(j, axis, t) with t = f / fps.
template <class Fn>
SignClip function_clip(const std::string& gloss, std::size_t frames, double fps, Fn&& fn) {
  SignClip c;
  c.gloss = gloss;
  c.fps = fps;
  for (std::size_t f = 0; f < frames; ++f) {
    const double t = static_cast<double>(f) / fps;
    Pose p;
    for (std::size_t j = 0; j < kJointCount; ++j)
      for (std::size_t a = 0; a < 3; ++a) p[j][a] = fn(j, a, t);
    c.frames.push_back(p);
  }
  return c;
}

/// Smooth random clip: each coordinate is a low-frequency sinusoid.
inline SignClip smooth_clip(const std::string& gloss, std::size_t frames, double fps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(0.1, 1.0), freq(0.2, 2.0), phase(0.0, 6.283185307179586);
  std::vector<std::array<double, 4>> params(kJointCount * 3);
  for (auto& p : params) p = {amp(rng), freq(rng), phase(rng), amp(rng) - 0.5};
  return function_clip(gloss, frames, fps, [&](std::size_t j, std::size_t a, double t) {
    const auto& p = params[j * 3 + a];
    return p[3] + p[0] * std::sin(6.283185307179586 * p[1] * t + p[2]);
  });
}

/// Clip with shoulders at (+-w/2, 0, 0) and every other joint at a fixed
/// offset, for stores used by synthesis tests.
inline SignClip toy_clip(const std::string& gloss, std::size_t frames = 6, double fps = 24.0, double seed = 0.0) {
  return function_clip(gloss, frames, fps, [&](std::size_t j, std::size_t a, double t) {
    if (j == joints::kLeftShoulder) return a == 0 ? -0.5 : 0.0;
    if (j == joints::kRightShoulder) return a == 0 ? 0.5 : 0.0;
    return 0.01 * static_cast<double>(j % 17) + 0.1 * static_cast<double>(a) + seed + 0.3 * std::sin(4.0 * t + seed);
  });
}

// ---- natural spline oracle ---------------------------------------------------

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Natural cubic spline from the full (n+1)x(n+1) second-derivative system,
/// evaluated in the textbook moment form.
class OracleSpline {
 public:
  OracleSpline(std::vector<double> t, std::vector<double> y) : t_(std::move(t)), y_(std::move(y)) {
    const std::size_t n = t_.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    a[0][0] = 1.0;
    a[n - 1][n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = t_[i] - t_[i - 1], h1 = t_[i + 1] - t_[i];
      a[i][i - 1] = h0;
      a[i][i] = 2.0 * (h0 + h1);
      a[i][i + 1] = h1;
      b[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    m_ = dense_solve(a, b);
  }

  double operator()(double x) const {
    std::size_t i = 0;
    while (i + 2 < t_.size() && x > t_[i + 1]) ++i;
    const double h = t_[i + 1] - t_[i];
    const double l = t_[i + 1] - x, r = x - t_[i];
    return m_[i] * l * l * l / (6.0 * h) + m_[i + 1] * r * r * r / (6.0 * h) + (y_[i] / h - m_[i] * h / 6.0) * l +
           (y_[i + 1] / h - m_[i + 1] * h / 6.0) * r;
  }

  const std::vector<double>& moments() const { return m_; }

 private:
  std::vector<double> t_, y_, m_;
};

// ---- BLEU oracle -------------------------------------------------------------

struct OracleBleu {
  double bleu = 0.0;
  std::vector<double> precision;
  double bp = 1.0;
};

/// Straight from the definition, for single-reference corpora of sentences
/// long enough that every order has at least one n-gram somewhere.
inline OracleBleu oracle_bleu(const std::vector<std::vector<std::string>>& cands,
                              const std::vector<std::vector<std::string>>& refs, std::size_t max_n) {
  OracleBleu o;
  double c = 0, r = 0;
  std::vector<double> match(max_n, 0), total(max_n, 0);
  for (std::size_t s = 0; s < cands.size(); ++s) {
    c += static_cast<double>(cands[s].size());
    r += static_cast<double>(refs[s].size());
    for (std::size_t n = 1; n <= max_n; ++n) {
      std::map<std::vector<std::string>, int> cc, rc;
      for (std::size_t i = 0; i + n <= cands[s].size(); ++i)
        cc[std::vector<std::string>(cands[s].begin() + i, cands[s].begin() + i + n)]++;
      for (std::size_t i = 0; i + n <= refs[s].size(); ++i)
        rc[std::vector<std::string>(refs[s].begin() + i, refs[s].begin() + i + n)]++;
      for (const auto& [g, k] : cc) {
        total[n - 1] += k;
        auto it = rc.find(g);
        match[n - 1] += std::min(k, it == rc.end() ? 0 : it->second);
      }
    }
  }
  o.bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t n = 0; n < max_n; ++n) {
    const double p = match[n] / total[n];
    o.precision.push_back(p);
    if (p == 0.0) zero = true;
    else log_sum += std::log(p);
  }
  o.bleu = zero ? 0.0 : o.bp * std::exp(log_sum / static_cast<double>(max_n));
  return o;
}

// ---- MPJPE oracle ------------------------------------------------------------

inline double oracle_mpjpe(const std::vector<Pose>& a, const std::vector<Pose>& b) {
  double sum = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f)
    for (std::size_t j = 0; j < kJointCount; ++j) {
      const double dx = a[f][j].x - b[f][j].x, dy = a[f][j].y - b[f][j].y, dz = a[f][j].z - b[f][j].z;
      sum += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
  return sum / static_cast<double>(a.size() * kJointCount);
}

// ---- synthetic text ------------------------------------------------------------

/// Deterministic English-like sentences over the bundled vocabulary plus
/// out-of-vocabulary names, punctuation and clause splitters.
class SentenceGenerator {
 public:
  explicit SentenceGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string next() {
    static const std::vector<std::string> times{"yesterday", "today", "tomorrow", "last week", "tonight", "now"};
    static const std::vector<std::string> subjects{"i", "you", "he", "she", "we", "they", "my mother", "the teacher",
                                                   "emma", "john", "the children", "our dog"};
    static const std::vector<std::string> verbs{"went to", "like", "watched", "bought", "saw", "is eating",
                                                "wants", "visited", "cooked", "can't find", "don't like", "studies"};
    static const std::vector<std::string> objects{"school", "the store", "tv", "a new car", "pizza", "the bank",
                                                  "coffee", "my friend's house", "the zxqv", "3 books", "the park"};
    static const std::vector<std::string> extras{"", "", "", " very happy", " not", " quickly", " again"};
    static const std::vector<std::string> joins{" and ", " but ", ", ", " because ", " so ", " when ", " then "};
    static const std::vector<std::string> ends{".", "!", "?", "", "..."};
    std::string s;
    const int clauses = 1 + static_cast<int>(rng_() % 3);
    for (int c = 0; c < clauses; ++c) {
      if (c > 0) s += pick(joins);
      if (rng_() % 3 == 0) s += pick(times) + " ";
      if (rng_() % 5 == 0) s += pick({"where", "what", "who", "why", "how"}) + " ";
      s += pick(subjects) + " " + pick(verbs) + " " + pick(objects) + pick(extras);
    }
    s += pick(ends);
    if (rng_() % 4 == 0) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
  }

 private:
  std::string pick(const std::vector<std::string>& v) { return v[rng_() % v.size()]; }
  std::mt19937_64 rng_;
};

// ---- running the CLI ------------------------------------------------------------

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

#ifdef ASLGLOSS_CLI_PATH
inline std::string cli() { return std::string("'") + ASLGLOSS_CLI_PATH + "'"; }
#endif

/// Runs `command` through the shell; stderr is discarded unless redirected.
inline CommandResult run_command(const std::string& command) {
  CommandResult r;
  FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace testkit
