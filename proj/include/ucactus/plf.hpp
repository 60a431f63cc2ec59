#pragma once

// Piecewise-linear profiles, sublevel segment sets and one/two-point
// stabbing of segment families.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ucactus/error.hpp"

namespace ucactus {

struct Piece {
  double x0, y0, x1, y1;
  double slope() const { return x1 > x0 ? (y1 - y0) / (x1 - x0) : 0.0; }
  double at(double x) const { return x1 > x0 ? y0 + (x - x0) * slope() : y0; }
};

// Continuous piecewise-linear function on [0, length], linear between
// consecutive breakpoints. Cyclic profiles satisfy y(0) == y(length).
struct Profile {
  double length = 0.0;
  bool cyclic = false;
  std::vector<double> xs;
  std::vector<double> ys;

  int breakpoint_count() const { return static_cast<int>(xs.size()); }

  double eval(double x) const {
    if (xs.size() == 1) return ys[0];
    x = std::clamp(x, 0.0, length);
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    if (i + 1 >= xs.size()) return ys.back();
    return Piece{xs[i], ys[i], xs[i + 1], ys[i + 1]}.at(x);
  }

  std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    if (xs.size() == 1) {
      out.push_back({xs[0], ys[0], xs[0], ys[0]});
      return out;
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) out.push_back({xs[i], ys[i], xs[i + 1], ys[i + 1]});
    return out;
  }

  double min_value() const { return *std::min_element(ys.begin(), ys.end()); }
  double max_value() const { return *std::max_element(ys.begin(), ys.end()); }

  Profile scaled(double w) const {
    Profile p = *this;
    for (double& y : p.ys) y *= w;
    return p;
  }

  // Smallest x with y(x) <= target, if any.
  std::optional<double> first_at_most(double target) const {
    if (ys[0] <= target) return xs[0];
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (ys[i + 1] <= target) {
        const double y0 = ys[i], y1 = ys[i + 1];
        const double x = xs[i] + (target - y0) / (y1 - y0) * (xs[i + 1] - xs[i]);
        return std::clamp(x, xs[i], xs[i + 1]);
      }
    }
    return std::nullopt;
  }
};

// Builds a profile from candidate breakpoints and an exact evaluator. The
// caller guarantees the function is linear between the supplied positions.
template <class F>
Profile make_profile(double length, bool cyclic, std::vector<double> positions, F&& f) {
  positions.push_back(0.0);
  positions.push_back(length);
  for (double& x : positions) x = std::clamp(x, 0.0, length);
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end(),
                              [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }),
                  positions.end());
  if (positions.size() >= 2) {
    positions.front() = 0.0;
    positions.back() = length;
  }
  Profile p;
  p.length = length;
  p.cyclic = cyclic;
  p.xs = std::move(positions);
  p.ys.reserve(p.xs.size());
  for (double x : p.xs) p.ys.push_back(f(x));
  if (cyclic && p.ys.size() >= 2) p.ys.back() = p.ys.front();
  return p;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct SegmentSet {
  int owner = -1;
  double length = 0.0;
  bool cyclic = false;
  std::vector<Interval> intervals;

  bool empty() const { return intervals.empty(); }
  bool contains(double x) const {
    for (const Interval& iv : intervals) {
      if (iv.contains(x)) return true;
    }
    return false;
  }
};

namespace detail {

inline void append_interval(std::vector<Interval>& out, double lo, double hi) {
  if (!out.empty() && lo <= out.back().hi) {
    out.back().hi = std::max(out.back().hi, hi);
  } else {
    out.push_back({lo, hi});
  }
}

// On cyclic domains positions 0 and L are the same point; mirror a seam
// touch so that both coordinates stab the set.
inline void close_seam(SegmentSet& s) {
  if (!s.cyclic || s.intervals.empty()) return;
  const bool at_start = s.intervals.front().lo == 0.0;
  const bool at_end = s.intervals.back().hi == s.length;
  if (at_end && !at_start) s.intervals.insert(s.intervals.begin(), Interval{0.0, 0.0});
  if (at_start && !at_end) s.intervals.push_back(Interval{s.length, s.length});
}

}  // namespace detail

// Sublevel set {x : w * y(x) <= lambda}, closed, with absolute slack `tol`.
inline SegmentSet coverage_set(const Profile& profile, double w, double lambda, double tol = 1e-9, int owner = -1) {
  SegmentSet s;
  s.owner = owner;
  s.length = profile.length;
  s.cyclic = profile.cyclic;
  if (w == 0.0) {
    if (lambda + tol >= 0.0) s.intervals.push_back({0.0, profile.length});
    return s;
  }
  const double level = lambda + tol;
  if (profile.xs.size() == 1) {
    if (w * profile.ys[0] <= level) s.intervals.push_back({0.0, profile.length});
    return s;
  }
  for (const Piece& pc : profile.pieces()) {
    const double a = w * pc.y0, b = w * pc.y1;
    const bool in0 = a <= level, in1 = b <= level;
    if (in0 && in1) {
      detail::append_interval(s.intervals, pc.x0, pc.x1);
    } else if (in0) {
      const double x = pc.x0 + (level - a) / (b - a) * (pc.x1 - pc.x0);
      detail::append_interval(s.intervals, pc.x0, std::clamp(x, pc.x0, pc.x1));
    } else if (in1) {
      const double x = pc.x0 + (level - a) / (b - a) * (pc.x1 - pc.x0);
      detail::append_interval(s.intervals, std::clamp(x, pc.x0, pc.x1), pc.x1);
    }
  }
  detail::close_seam(s);
  return s;
}

inline SegmentSet intersect(const SegmentSet& a, const SegmentSet& b) {
  SegmentSet out;
  out.owner = -1;
  out.length = a.length;
  out.cyclic = a.cyclic;
  std::size_t i = 0, j = 0;
  while (i < a.intervals.size() && j < b.intervals.size()) {
    const double lo = std::max(a.intervals[i].lo, b.intervals[j].lo);
    const double hi = std::min(a.intervals[i].hi, b.intervals[j].hi);
    if (lo <= hi) detail::append_interval(out.intervals, lo, hi);
    if (a.intervals[i].hi < b.intervals[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

// Sorted endpoint sequence for a sweep over segment sets. Left endpoints
// precede right endpoints at equal coordinates.
struct SweepEvent {
  double x;
  bool right;
  int set;
  friend bool operator<(const SweepEvent& a, const SweepEvent& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.right != b.right) return !a.right;
    return a.set < b.set;
  }
};

struct SweepState {
  std::vector<SweepEvent> events;
  std::vector<char> hit;   // F
  int alpha = 0;
  int beta = 0;

  explicit SweepState(const std::vector<SegmentSet>& sets) {
    for (int k = 0; k < static_cast<int>(sets.size()); ++k) {
      for (const Interval& iv : sets[k].intervals) {
        events.push_back({iv.lo, false, k});
        events.push_back({iv.hi, true, k});
      }
    }
    std::sort(events.begin(), events.end());
    hit.assign(sets.size(), 0);
  }
};

// A position contained in every set; an interval endpoint when one exists.
inline std::optional<double> stab_one(const std::vector<SegmentSet>& sets) {
  if (sets.empty()) return 0.0;
  for (const SegmentSet& s : sets) {
    if (s.empty()) return std::nullopt;
  }
  SweepState st(sets);
  const int n = static_cast<int>(sets.size());
  std::vector<int> open(n, 0);
  for (const SweepEvent& ev : st.events) {
    if (!ev.right) {
      if (open[ev.set]++ == 0) ++st.alpha;
      if (st.alpha == n) return ev.x;
    } else if (--open[ev.set] == 0) {
      --st.alpha;
    }
  }
  return std::nullopt;
}

// Two positions (p, q) such that every set contains p or q. For each
// candidate endpoint x_i the sweep records which sets x_i hits (flags F,
// count alpha), then rescans the whole sequence for an endpoint hitting the
// beta = n - alpha remaining sets.
inline std::optional<std::pair<double, double>> stab_two(const std::vector<SegmentSet>& sets) {
  const int n = static_cast<int>(sets.size());
  for (const SegmentSet& s : sets) {
    if (s.empty()) throw Error(ErrorKind::UncoverableSet, "segment set " + std::to_string(s.owner) + " is empty");
  }
  if (n == 0) return std::make_pair(0.0, 0.0);
  SweepState st(sets);
  const int m = static_cast<int>(st.events.size());
  std::vector<int> open(n, 0);
  for (int i = 0; i < m; ++i) {
    if (i > 0 && st.events[i].x == st.events[i - 1].x) continue;
    const double xi = st.events[i].x;
    // sets hit by xi: intervals opened at or before xi and not closed before xi
    std::fill(open.begin(), open.end(), 0);
    st.alpha = 0;
    for (const SweepEvent& ev : st.events) {
      if (ev.x > xi || (ev.x == xi && ev.right)) break;
      if (!ev.right) {
        if (open[ev.set]++ == 0) ++st.alpha;
      } else if (--open[ev.set] == 0) {
        --st.alpha;
      }
    }
    for (int k = 0; k < n; ++k) st.hit[k] = open[k] > 0 ? 1 : 0;
    st.beta = n - st.alpha;
    if (st.beta == 0) return std::make_pair(xi, xi);
    std::fill(open.begin(), open.end(), 0);
    int alpha = 0;
    for (const SweepEvent& ev : st.events) {
      if (st.hit[ev.set]) continue;
      if (!ev.right) {
        if (open[ev.set]++ == 0 && ++alpha >= st.beta) return std::make_pair(xi, ev.x);
      } else if (--open[ev.set] == 0) {
        --alpha;
      }
    }
  }
  return std::nullopt;
}

struct Line {
  double slope;
  double intercept;
  double at(double x) const { return slope * x + intercept; }
};

// Leftmost minimiser of max_i line_i(x) over [lo, hi]. The envelope is
// convex, so the minimum sits where the increasing and non-increasing
// halves cross.
inline std::pair<double, double> minimize_upper_envelope(const std::vector<Line>& lines, double lo, double hi) {
  auto g = [&](double x) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Line& l : lines) best = std::max(best, l.at(x));
    return best;
  };
  if (lines.empty()) return {lo, 0.0};
  auto up = [&](double x) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Line& l : lines) if (l.slope > 0) best = std::max(best, l.at(x));
    return best;
  };
  auto down = [&](double x) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Line& l : lines) if (l.slope <= 0) best = std::max(best, l.at(x));
    return best;
  };
  double x_star;
  if (up(lo) >= down(lo)) {
    x_star = lo;
  } else if (up(hi) <= down(hi)) {
    x_star = hi;
  } else {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (up(mid) < down(mid)) a = mid; else b = mid;
    }
    // exact crossing of the two active lines near the bracket
    const double mid = 0.5 * (a + b);
    const Line* lu = nullptr;
    const Line* ld = nullptr;
    for (const Line& l : lines) {
      if (l.slope > 0 && (!lu || l.at(mid) > lu->at(mid))) lu = &l;
      if (l.slope <= 0 && (!ld || l.at(mid) > ld->at(mid))) ld = &l;
    }
    x_star = std::clamp((ld->intercept - lu->intercept) / (lu->slope - ld->slope), lo, hi);
    if (g(a) < g(x_star)) x_star = a;
    if (g(b) < g(x_star)) x_star = b;
  }
  const double value = g(x_star);
  // leftmost point of the (possibly flat) minimum
  const double tol = 1e-12 * std::max(1.0, std::abs(value));
  if (x_star > lo && g(lo) <= value + tol) return {lo, g(lo)};
  double a = lo, b = x_star;
  if (x_star > lo && g(0.5 * (a + b)) <= value + tol) {
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (a + b);
      if (g(mid) <= value + tol) b = mid; else a = mid;
    }
    return {b, g(b)};
  }
  return {x_star, value};
}

}  // namespace ucactus
