#include "qlogic/lp.hpp"

#include <limits>
#include <stdexcept>

namespace ql::lp {

namespace {

struct Tableau {
  std::vector<std::vector<Q>> t;  // rows: coefficients, last entry the right-hand side
  std::vector<int> basis;
  std::vector<char> banned;  // columns never allowed to enter
  int cols = 0;

  void pivot(int r, int c) {
    Q p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (static_cast<int>(i) == r || t[i][c] == 0) continue;
      Q f = t[i][c];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Maximizes obj over the current basic feasible solution; false if unbounded.
  bool run(const std::vector<Q>& obj) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols && enter < 0; ++j) {
        if (banned[j]) continue;
        Q rc = obj[j];
        for (std::size_t i = 0; i < t.size(); ++i) rc -= obj[basis[i]] * t[i][j];
        if (rc > 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Q best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i][enter] <= 0) continue;
        Q ratio = t[i][cols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  Q value(const std::vector<Q>& obj) const {
    Q v = 0;
    for (std::size_t i = 0; i < t.size(); ++i) v += obj[basis[i]] * t[i][cols];
    return v;
  }
};

}  // namespace

Result maximize(const std::vector<Q>& c, const std::vector<Row>& rows) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  int slacks = 0, artificials = 0;
  std::vector<Row> norm(rows);
  for (auto& r : norm) {
    if (static_cast<int>(r.a.size()) != n) throw std::invalid_argument("LP row width differs from objective");
    if (r.b < 0) {
      for (auto& v : r.a) v = -v;
      r.b = -r.b;
      if (r.sense != Sense::Eq) r.sense = r.sense == Sense::Le ? Sense::Ge : Sense::Le;
    }
    if (r.sense != Sense::Eq) ++slacks;
    if (r.sense != Sense::Le) ++artificials;
  }
  Tableau tab;
  tab.cols = n + slacks + artificials;
  tab.t.assign(m, std::vector<Q>(tab.cols + 1, Q(0)));
  tab.basis.assign(m, -1);
  tab.banned.assign(tab.cols, 0);
  int s = n, a = n + slacks;
  for (int i = 0; i < m; ++i) {
    const Row& r = norm[i];
    for (int j = 0; j < n; ++j) tab.t[i][j] = r.a[j];
    tab.t[i][tab.cols] = r.b;
    if (r.sense == Sense::Le) {
      tab.t[i][s] = 1;
      tab.basis[i] = s++;
    } else {
      if (r.sense == Sense::Ge) tab.t[i][s++] = -1;
      tab.t[i][a] = 1;
      tab.basis[i] = a++;
    }
  }
  Result out;
  // Phase 1: drive the artificial columns to zero.
  std::vector<Q> phase1(tab.cols, Q(0));
  for (int j = n + slacks; j < tab.cols; ++j) phase1[j] = -1;
  tab.run(phase1);
  if (tab.value(phase1) < 0) return out;
  for (int j = n + slacks; j < tab.cols; ++j) tab.banned[j] = 1;
  for (std::size_t i = 0; i < tab.t.size();) {
    if (tab.basis[i] < n + slacks) {
      ++i;
      continue;
    }
    int c = -1;
    for (int j = 0; j < n + slacks && c < 0; ++j)
      if (tab.t[i][j] != 0) c = j;
    if (c >= 0) {
      tab.pivot(static_cast<int>(i), c);
      ++i;
    } else {  // redundant row
      tab.t.erase(tab.t.begin() + static_cast<long>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
    }
  }
  std::vector<Q> phase2(tab.cols, Q(0));
  for (int j = 0; j < n; ++j) phase2[j] = c[j];
  if (!tab.run(phase2)) {
    out.status = Result::Status::Unbounded;
    return out;
  }
  out.status = Result::Status::Optimal;
  out.value = tab.value(phase2);
  out.x.assign(n, Q(0));
  for (std::size_t i = 0; i < tab.t.size(); ++i)
    if (tab.basis[i] < n) out.x[tab.basis[i]] = tab.t[i][tab.cols];
  return out;
}

Q to_q(const Rational& r) { return Q(r.num()) / Q(r.den()); }

Rational to_rational(const Q& q) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  const cpp_int lo = std::numeric_limits<std::int64_t>::min(), hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw std::overflow_error("LP value does not fit a 64-bit rational");
  return Rational(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
}

}  // namespace ql::lp
