#include "sumset/torus.hpp"

#include <algorithm>
#include <map>

#include "sumset/error.hpp"

namespace sumset {

namespace {

void require_period(const Rational& period) {
  if (period <= 0) throw Error("period must be positive, got " + to_string(period));
}

}  // namespace

TorusSet TorusSet::from_arcs(const Rational& period, const IntervalSet& arcs) {
  require_period(period);
  if (arcs.empty()) return TorusSet(period, arcs);
  if (arcs.min() < 0 || arcs.max() > period) {
    throw Error("torus arcs must lie in [0, period]: " + arcs.debug_string());
  }
  std::vector<Interval> parts = arcs.components();
  if (parts.back().hi == period) {
    if (parts.back().is_point()) parts.pop_back();
    parts.push_back({0, 0});
  }
  return TorusSet(period, IntervalSet::normalize(std::move(parts)));
}

TorusSet TorusSet::full(const Rational& period) {
  require_period(period);
  return TorusSet(period, IntervalSet::interval(0, period));
}

bool TorusSet::is_full() const { return arcs_.size() == 1 && arcs_.min() == 0 && arcs_.max() == period_; }

bool TorusSet::contains(const Rational& x) const {
  Rational r = x - Rational(floor(x / period_)) * period_;
  return arcs_.contains(r);
}

bool TorusSet::includes(const TorusSet& other) const {
  if (other.period_ != period_) throw Error("torus sets with different periods");
  return arcs_.includes(other.arcs_);
}

Rational LevelDecomposition::level_measure(unsigned k) const {
  if (k == 0) throw Error("levels are indexed from 1");
  if (k > levels.size()) return 0;
  return levels[k - 1].measure();
}

Rational LevelDecomposition::total_measure() const {
  Rational total = 0;
  for (const auto& level : levels) total += level.measure();
  return total;
}

TorusSet project(const IntervalSet& s, const Rational& period) {
  require_period(period);
  std::vector<Interval> parts;
  for (const auto& iv : s.components()) {
    if (iv.length() >= period) return TorusSet::full(period);
    Rational lo = iv.lo - Rational(floor(iv.lo / period)) * period;
    Rational hi = lo + iv.length();
    if (hi <= period) {
      parts.push_back({lo, hi});
    } else {
      parts.push_back({lo, period});
      parts.push_back({0, hi - period});
    }
  }
  IntervalSet arcs = IntervalSet::normalize(std::move(parts));
  if (arcs.size() == 1 && arcs.min() == 0 && arcs.max() == period) return TorusSet::full(period);
  return TorusSet::from_arcs(period, arcs);
}

LevelDecomposition level_sets(const IntervalSet& e, const Rational& period) {
  require_period(period);
  if (e.empty()) throw Error("level_sets of the empty set");
  if (e.min() < 0) throw Error("level_sets needs a set of nonnegative reals");

  // Fragments E ∩ [n·p, (n+1)·p] - n·p. Whole periods covered by one
  // component are folded into `base`.
  struct Fragment {
    Rational lo, hi;
  };
  std::vector<Fragment> fragments;
  unsigned long base = 0;
  for (const auto& iv : e.components()) {
    Integer first = floor(iv.lo / period);
    Integer last = floor(iv.hi / period);
    if (first == last) {
      Rational shift = Rational(first) * period;
      fragments.push_back({iv.lo - shift, iv.hi - shift});
      continue;
    }
    Rational shift_first = Rational(first) * period;
    fragments.push_back({iv.lo - shift_first, period});
    Integer full = last - first - 1;
    base += full.get_ui();
    Rational shift_last = Rational(last) * period;
    fragments.push_back({0, iv.hi - shift_last});
  }

  std::vector<Rational> events{Rational(0), period};
  for (const auto& f : fragments) {
    events.push_back(f.lo);
    events.push_back(f.hi);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  auto index_of = [&](const Rational& x) {
    return static_cast<std::size_t>(std::lower_bound(events.begin(), events.end(), x) - events.begin());
  };

  std::vector<long> delta(events.size(), 0);
  for (const auto& f : fragments) {
    if (f.lo == f.hi) continue;
    delta[index_of(f.lo)] += 1;
    delta[index_of(f.hi)] -= 1;
  }
  std::vector<unsigned long> coverage(events.size() - 1, 0);
  long running = 0;
  unsigned long max_open = 0;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    running += delta[i];
    coverage[i] = base + static_cast<unsigned long>(running);
    max_open = std::max(max_open, coverage[i]);
  }

  // Pointwise count at each event x in [0, period): #{n >= 0 : x + n·p ∈ E}.
  unsigned long max_point = 0;
  for (const auto& x : events) {
    if (x == period) continue;
    Integer count = 0;
    for (const auto& iv : e.components()) {
      Integer n_lo = ceil((iv.lo - x) / period);
      Integer n_hi = floor((iv.hi - x) / period);
      if (n_lo < 0) n_lo = 0;
      if (n_hi >= n_lo) count += n_hi - n_lo + 1;
    }
    max_point = std::max(max_point, count.get_ui());
  }

  LevelDecomposition out;
  out.period = period;
  out.k_max = static_cast<unsigned>(max_open);
  out.k_pointwise = static_cast<unsigned>(std::max(max_open, max_point));
  for (unsigned long k = 1; k <= max_open; ++k) {
    std::vector<Interval> arcs;
    for (std::size_t i = 0; i < coverage.size(); ++i) {
      if (coverage[i] >= k) arcs.push_back({events[i], events[i + 1]});
    }
    IntervalSet level = IntervalSet::normalize(std::move(arcs));
    out.levels.push_back(level.size() == 1 && level.min() == 0 && level.max() == period
                             ? TorusSet::full(period)
                             : TorusSet::from_arcs(period, level));
  }
  return out;
}

Arc arc_hull(const TorusSet& t) {
  if (t.empty()) throw Error("arc_hull of the empty set");
  if (t.is_full()) throw Error("arc_hull of the full circle");
  const auto& parts = t.arcs().components();
  const Rational& p = t.period();

  std::optional<Arc> best;
  Rational best_gap = -1;
  auto consider = [&](const Rational& gap_start, const Rational& gap_length) {
    if (gap_length <= 0) return;
    Rational start = gap_start + gap_length;
    if (start >= p) start -= p;
    Arc candidate{start, p - gap_length};
    if (gap_length > best_gap || (gap_length == best_gap && start < best->start)) {
      best_gap = gap_length;
      best = candidate;
    }
  };
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) consider(parts[i].hi, parts[i + 1].lo - parts[i].hi);
  consider(parts.back().hi, p - parts.back().hi + parts.front().lo);
  if (!best) throw Error("arc_hull of the full circle");
  return *best;
}

TorusSet dilate(const TorusSet& t, unsigned long n) {
  if (n == 0) throw Error("dilation factor must be positive");
  std::vector<Interval> parts;
  for (const auto& iv : t.arcs().components()) parts.push_back({iv.lo * n, iv.hi * n});
  return project(IntervalSet::normalize(std::move(parts)), t.period());
}

TorusSet torus_sum(const TorusSet& s, const TorusSet& t) {
  if (s.period() != t.period()) throw Error("torus sets with different periods");
  if (s.empty() || t.empty()) return TorusSet::from_arcs(s.period(), IntervalSet());
  return project(minkowski_sum(s.arcs(), t.arcs()), s.period());
}

std::optional<Dilation> find_small_dilation(const TorusSet& t, unsigned long n_max, const Rational& slack) {
  if (t.empty()) throw Error("find_small_dilation of the empty set");
  if (slack < 0) throw Error("slack must be nonnegative");
  const Rational budget = t.measure() + slack;
  for (unsigned long n = 1; n <= n_max; ++n) {
    TorusSet image = dilate(t, n);
    Arc hull = image.is_full() ? Arc{0, t.period()} : arc_hull(image);
    if (hull.length <= budget) return Dilation{n, hull};
  }
  return std::nullopt;
}

}  // namespace sumset
