#include "rotcalc/correlators.hpp"

#include "rotcalc/errors.hpp"
#include "rotcalc/monomial_builder.hpp"

namespace rotcalc {
namespace {

IndexTuple without(const IndexTuple& idx, std::size_t j) {
  IndexTuple out;
  out.reserve(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (a != j) out.push_back(idx[a]);
  }
  return out;
}

IndexTuple appended(IndexTuple idx, int x) {
  idx.push_back(x);
  return idx;
}

Expression R(int i, int j) { return Expression::r(i, j); }

}  // namespace

void CorrelatorStore::check(int genus, const IndexTuple& indices) const {
  const int k = static_cast<int>(indices.size());
  if (genus == 0) {
    if (k < kMinGenus0Arity || k > kMaxGenus0Arity) {
      throw ArityUnsupported("genus-0 functions need 4 to 7 indices");
    }
  } else if (genus == 1) {
    if (k < kMinGenus1Arity || k > kMaxGenus1Arity) {
      throw ArityUnsupported("genus-1 functions need 1 to 4 indices");
    }
  } else {
    throw ArityUnsupported("genus must be 0 or 1");
  }
  for (int i : indices) calc_.ctx().check_index(i);
}

Expression CorrelatorStore::correlator(int genus, const IndexTuple& indices) const {
  check(genus, indices);
  const auto key = std::make_pair(genus, indices);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Expression value = compute(genus, indices);
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(key, std::move(value)).first->second;
}

std::size_t CorrelatorStore::cached() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

Expression CorrelatorStore::z4(const IndexTuple& idx) const {
  std::map<int, int> count;
  for (int i : idx) ++count[i];
  if (count.size() == 1) return -(Expression::g(idx[0]) * R(idx[0], idx[0]));
  if (count.size() != 2) return {};
  auto it = count.begin();
  const int a = it->first;
  const int ca = it->second;
  const int b = std::next(it)->first;
  const Expression base = Expression::s(a) * Expression::s(b) * R(a, b);
  if (ca == 2) return base;
  return -base;
}

Expression CorrelatorStore::phi1(int i) const {
  ExprSum acc;
  for (int j = 1; j <= calc_.n(); ++j) {
    acc.add(calc_.v(i, j), Rational(-12, 24), M().r(i, j));
    acc.add_term(M().r(i, j).s(i).s(j, -1), Rational(-1, 24));
  }
  return acc.finish();
}

Expression CorrelatorStore::compute(int genus, const IndexTuple& idx) const {
  if (genus == 0 && idx.size() == kMinGenus0Arity) return z4(idx);
  if (genus == 1 && idx.size() == kMinGenus1Arity) return phi1(idx[0]);

  const int q = idx.back();
  const IndexTuple head(idx.begin(), idx.end() - 1);
  const Expression prev = correlator(genus, head);

  ExprSum acc;
  acc += calc_.derive(q, prev);
  for (std::size_t j = 0; j < head.size(); ++j) {
    const int a = head[j];
    acc.add(prev, Rational(-1), M().r(a, q).s(q).s(a, -1));
    const IndexTuple rest = without(head, j);
    acc.add(correlator(genus, appended(rest, q)), Rational(-1),
            M().r(a, q).s(a).s(q, -1));
    if (a != q) continue;
    for (int p = 1; p <= calc_.n(); ++p) {
      acc.add(correlator(genus, appended(rest, p)), Rational(1),
              M().r(p, q).s(q).s(p, -1));
    }
  }
  return acc.finish();
}

Expression CorrelatorStore::phi_closed(const IndexTuple& idx) const {
  if (idx.empty() || idx.size() > 2) throw ArityUnsupported("closed forms exist for one and two points");
  for (int i : idx) calc_.ctx().check_index(i);
  if (idx.size() == 1) return phi1(idx[0]);

  const int n = calc_.n();
  const int i = idx[0];
  const int j = idx[1];
  const Rational w(1, 24);
  ExprSum acc;
  if (i == j) {
    acc.add_term(M().r(i, i, 2), 12 * w);
    acc.add_term(M().t(2, i).ig(i), -w);
    for (int k = 1; k <= n; ++k) {
      acc.add_term(M().r(i, k, 2), -10 * w);
      acc.add_term(M().r(i, k, 2).s(i, 2).ig(k), w);
      acc.add(calc_.v(i, k), 24 * w, M().r(i, i).r(i, k));
      for (int l = 1; l <= n; ++l) {
        acc.add(calc_.v(k, l), -12 * w,
                M().r(i, k).r(k, l).s(i).s(k, -1));
        acc.add_term(M().r(i, k).r(k, l).s(i).s(l, -1), -w);
      }
      if (k == i) continue;
      acc.add(calc_.theta(i, k), -w, M().s(i).s(k, -1));
      acc.add(calc_.theta(k, i), -w, M().s(k).s(i, -1));
    }
    return acc.finish();
  }
  acc.add_term(M().r(i, j, 2), 12 * w);
  for (int k = 1; k <= n; ++k) {
    acc.add_term(M().r(i, k).r(j, k).s(i).s(j).ig(k), w);
    acc.add(calc_.v(i, k), 12 * w,
            M().r(i, j).r(i, k).s(j).s(i, -1));
    acc.add(calc_.v(j, k), 12 * w,
            M().r(i, j).r(j, k).s(i).s(j, -1));
  }
  acc.add(calc_.theta(i, j), -w, M().s(j).s(i, -1));
  acc.add(calc_.theta(j, i), -w, M().s(i).s(j, -1));
  return acc.finish();
}

Expression CorrelatorStore::t_xbar_on_correlator(int genus, const IndexTuple& idx) const {
  check(genus, idx);
  const int n = calc_.n();
  const int size = static_cast<int>(idx.size());
  // Subsets are drawn from the first k indices (genus 0: all but the last two).
  const int k = genus == 0 ? size - 2 : size;
  const int max_m = genus == 0 ? k - 1 : k;

  ExprSum acc;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    const int m = __builtin_popcount(mask);
    if (m < 2 || m > max_m) continue;
    IndexTuple chosen;
    IndexTuple rest;
    for (int a = 0; a < size; ++a) {
      if (a < k && (mask >> a & 1u)) {
        chosen.push_back(idx[a]);
      } else {
        rest.push_back(idx[a]);
      }
    }
    for (int p = 1; p <= n; ++p) {
      for (int q = 1; q <= n; ++q) {
        IndexTuple left{p};
        left.insert(left.end(), chosen.begin(), chosen.end());
        left.push_back(q);
        IndexTuple right{q};
        right.insert(right.end(), rest.begin(), rest.end());
        acc.add_product(z(left), correlator(genus, right), Rational(1),
                        M().u(p).ig(q));
      }
    }
  }

  if (genus == 0) {
    const int a = idx[size - 2];
    const int b = idx[size - 1];
    if (a == b) {
      const IndexTuple head(idx.begin(), idx.end() - 1);
      for (int p = 1; p <= n; ++p) {
        IndexTuple t{p};
        t.insert(t.end(), head.begin(), head.end());
        acc.add(z(t), Rational(1), M().u(p));
      }
    }
    const Expression self = z(idx);
    acc.add(self, Rational(-1), M().u(a));
    acc.add(self, Rational(-1), M().u(b));
  } else {
    for (int p = 1; p <= n; ++p) {
      for (int q = 1; q <= n; ++q) {
        IndexTuple t{p};
        t.insert(t.end(), idx.begin(), idx.end());
        t.push_back(q);
        t.push_back(q);
        acc.add(z(t), Rational(1, 24), M().u(p).ig(q));
      }
    }
  }
  return acc.finish();
}

}  // namespace rotcalc
