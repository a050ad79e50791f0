#include "powpres/smith.hpp"

#include <algorithm>

namespace powpres {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

IntMatrix identity_matrix(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

// Core reduction; when u/v are non-null they are kept in sync so that
// u * input * v = m at every step.
size_t reduce(IntMatrix& m, IntMatrix* u, IntMatrix* v) {
  size_t t = 0;
  while (t < m.rows && t < m.cols) {
    // Pivot: smallest nonzero absolute value in the trailing submatrix.
    size_t pi = m.rows, pj = m.cols;
    BigInt best = 0;
    for (size_t i = t; i < m.rows; ++i)
      for (size_t j = t; j < m.cols; ++j) {
        const BigInt& w = m.at(i, j);
        if (w == 0) continue;
        BigInt aw = abs_big(w);
        if (pi == m.rows || aw < best) {
          best = aw;
          pi = i;
          pj = j;
        }
      }
    if (pi == m.rows) break;  // trailing submatrix is zero
    if (pi != t) {
      for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(t, j), m.at(pi, j));
      if (u)
        for (size_t j = 0; j < u->cols; ++j) std::swap(u->at(t, j), u->at(pi, j));
    }
    if (pj != t) {
      for (size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, t), m.at(i, pj));
      if (v)
        for (size_t i = 0; i < v->rows; ++i) std::swap(v->at(i, t), v->at(i, pj));
    }

    const BigInt& d = m.at(t, t);
    bool dirty = false;

    for (size_t i = t + 1; i < m.rows; ++i) {
      if (m.at(i, t) == 0) continue;
      BigInt q = m.at(i, t) / d;  // truncated: remainder |r| < |d|
      if (q != 0) {
        for (size_t j = t; j < m.cols; ++j) m.at(i, j) -= q * m.at(t, j);
        if (u)
          for (size_t j = 0; j < u->cols; ++j) u->at(i, j) -= q * u->at(t, j);
      }
      if (m.at(i, t) != 0) dirty = true;  // remainder survives; re-pivot
    }
    if (dirty) continue;

    for (size_t j = t + 1; j < m.cols; ++j) {
      if (m.at(t, j) == 0) continue;
      BigInt q = m.at(t, j) / d;
      if (q != 0) {
        for (size_t i = t; i < m.rows; ++i) m.at(i, j) -= q * m.at(i, t);
        if (v)
          for (size_t i = 0; i < v->rows; ++i) v->at(i, j) -= q * v->at(i, t);
      }
      if (m.at(t, j) != 0) dirty = true;
    }
    if (dirty) continue;

    // Divisibility: d must divide every remaining entry. If not, fold the
    // offending row into row t and start over; the next pivot shrinks.
    for (size_t i = t + 1; i < m.rows && !dirty; ++i)
      for (size_t j = t + 1; j < m.cols; ++j)
        if (m.at(i, j) % d != 0) {
          for (size_t c = t; c < m.cols; ++c) m.at(t, c) += m.at(i, c);
          if (u)
            for (size_t c = 0; c < u->cols; ++c) u->at(t, c) += u->at(i, c);
          dirty = true;
          break;
        }
    if (dirty) continue;

    ++t;
  }

  for (size_t i = 0; i < t; ++i)
    if (m.at(i, i) < 0) {
      for (size_t j = 0; j < m.cols; ++j) m.at(i, j) = -m.at(i, j);
      if (u)
        for (size_t j = 0; j < u->cols; ++j) u->at(i, j) = -u->at(i, j);
    }
  return t;
}

}  // namespace

SmithResult smith_normal_form(IntMatrix m) {
  SmithResult out;
  out.rank = reduce(m, nullptr, nullptr);
  out.divisors.reserve(out.rank);
  for (size_t i = 0; i < out.rank; ++i) out.divisors.push_back(m.at(i, i));
  return out;
}

SmithTransforms smith_normal_form_with_transforms(IntMatrix m) {
  SmithTransforms t;
  t.u = identity_matrix(m.rows);
  t.v = identity_matrix(m.cols);
  t.rank = reduce(m, &t.u, &t.v);
  t.d = std::move(m);
  return t;
}

std::optional<std::vector<BigInt>> solve_left(const IntMatrix& a,
                                              const std::vector<BigInt>& b) {
  if (b.size() != a.cols) return std::nullopt;
  // Zero rows cannot contribute to x a = b, and the transform bookkeeping
  // below costs rows^2 big-integer cells. Relator exponent matrices are
  // dominated by zero rows (every commutator contributes one), so strip
  // them and solve the compacted system.
  std::vector<size_t> live;
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j)
      if (a.at(i, j) != 0) {
        live.push_back(i);
        break;
      }
  IntMatrix c(live.size(), a.cols);
  for (size_t i = 0; i < live.size(); ++i)
    for (size_t j = 0; j < a.cols; ++j) c.at(i, j) = a.at(live[i], j);

  SmithTransforms t = smith_normal_form_with_transforms(c);
  // x c = b with x = y u becomes y d = b v.
  std::vector<BigInt> bv(c.cols);
  for (size_t j = 0; j < c.cols; ++j) {
    BigInt s = 0;
    for (size_t i = 0; i < c.cols; ++i) s += b[i] * t.v.at(i, j);
    bv[j] = std::move(s);
  }
  std::vector<BigInt> y(c.rows);
  for (size_t j = 0; j < c.cols; ++j) {
    if (j < t.rank) {
      if (bv[j] % t.d.at(j, j) != 0) return std::nullopt;
      y[j] = bv[j] / t.d.at(j, j);
    } else if (bv[j] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(a.rows, BigInt(0));
  for (size_t j = 0; j < c.rows; ++j) {
    BigInt s = 0;
    for (size_t i = 0; i < c.rows; ++i) s += y[i] * t.u.at(i, j);
    x[live[j]] = std::move(s);
  }
  return x;
}

IntMatrix exponent_matrix(const Presentation& p) {
  IntMatrix m(p.relator_count(), p.generator_count());
  for (size_t i = 0; i < p.relator_count(); ++i) {
    const std::vector<long long> e =
        exponent_sum_vector(p.relators()[i], p.generator_count());
    for (size_t j = 0; j < p.generator_count(); ++j) m.at(i, j) = e[j];
  }
  return m;
}

AbelianInvariants abelianization(const Presentation& p) {
  SmithResult snf = smith_normal_form(exponent_matrix(p));
  AbelianInvariants inv;
  for (const BigInt& d : snf.divisors)
    if (d != 1) inv.torsion.push_back(d);
  inv.free_rank = p.generator_count() - snf.rank;
  return inv;
}

}  // namespace powpres
