#include "ringlab/ring.hpp"

#include <sstream>

#include "ringlab/errors.hpp"

namespace ringlab {

Elem FiniteRing::reduce(const Vec& x) const {
  check(x.size() == orders.size(), "ring element has wrong coordinate count");
  Elem r(x.size());
  for (size_t t = 0; t < x.size(); ++t) r[t] = imod(x[t], orders[t]);
  return r;
}

Elem FiniteRing::add(const Elem& a, const Elem& b) const {
  Elem r(orders.size());
  for (size_t t = 0; t < orders.size(); ++t) r[t] = imod(a[t] + b[t], orders[t]);
  return r;
}

Elem FiniteRing::sub(const Elem& a, const Elem& b) const {
  Elem r(orders.size());
  for (size_t t = 0; t < orders.size(); ++t) r[t] = imod(a[t] - b[t], orders[t]);
  return r;
}

Elem FiniteRing::neg(const Elem& a) const {
  Elem r(orders.size());
  for (size_t t = 0; t < orders.size(); ++t) r[t] = imod(-a[t], orders[t]);
  return r;
}

Elem FiniteRing::mul(const Elem& a, const Elem& b) const {
  Elem out(orders.size(), 0);
  for (size_t i = 0; i < orders.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < orders.size(); ++j) {
      if (b[j] == 0) continue;
      i64 c = a[i] * b[j];
      const Vec& m = mult[i][j];
      for (size_t t = 0; t < orders.size(); ++t)
        out[t] = imod(out[t] + imod(c, orders[t]) * m[t], orders[t]);
    }
  }
  return out;
}

Elem FiniteRing::scalar(i64 n) const {
  Elem r(orders.size());
  for (size_t t = 0; t < orders.size(); ++t) r[t] = imod(n * unit[t], orders[t]);
  return r;
}

bool FiniteRing::is_zero(const Elem& a) const {
  for (i64 v : a)
    if (v != 0) return false;
  return true;
}

u64 FiniteRing::encode(const Elem& a) const {
  u64 code = 0;
  for (size_t t = orders.size(); t-- > 0;)
    code = code * static_cast<u64>(orders[t]) + static_cast<u64>(a[t]);
  return code;
}

Elem FiniteRing::decode(u64 code) const {
  Elem x(orders.size());
  for (size_t t = 0; t < orders.size(); ++t) {
    x[t] = static_cast<i64>(code % static_cast<u64>(orders[t]));
    code /= static_cast<u64>(orders[t]);
  }
  return x;
}

std::string FiniteRing::structure_key() const {
  std::ostringstream os;
  for (i64 d : orders) os << d << ",";
  os << "|";
  for (i64 v : unit) os << v << ",";
  os << "|";
  for (const auto& row : mult)
    for (const Vec& cell : row) {
      for (i64 v : cell) os << v << ",";
      os << ";";
    }
  return os.str();
}

RingPtr make_ring(std::string name, Vec orders, std::vector<std::vector<Vec>> mult, Vec unit) {
  auto ring = std::make_shared<FiniteRing>();
  const size_t k = orders.size();
  if (k == 0) fail(ErrorKind::OrderIncompatibility, "a ring needs at least one basis element");
  for (i64 d : orders)
    if (d < 1) fail(ErrorKind::OrderIncompatibility, "additive orders must be positive");
  if (mult.size() != k || unit.size() != k)
    fail(ErrorKind::OrderIncompatibility, "structure constant tables have wrong shape");
  for (auto& row : mult) {
    if (row.size() != k)
      fail(ErrorKind::OrderIncompatibility, "structure constant tables have wrong shape");
    for (Vec& cell : row) {
      if (cell.size() != k)
        fail(ErrorKind::OrderIncompatibility, "structure constant tables have wrong shape");
      for (size_t t = 0; t < k; ++t) cell[t] = imod(cell[t], orders[t]);
    }
  }
  for (size_t t = 0; t < k; ++t) unit[t] = imod(unit[t], orders[t]);

  ring->orders = std::move(orders);
  ring->mult = std::move(mult);
  ring->unit = std::move(unit);
  ring->name = std::move(name);
  ring->size = 1;
  for (i64 d : ring->orders) {
    check(ring->size <= (u64{1} << 40) / static_cast<u64>(d), "ring size exceeds supported range");
    ring->size *= static_cast<u64>(d);
  }

  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      for (size_t t = 0; t < k; ++t) {
        i64 v = ring->mult[i][j][t];
        if (imod(ring->orders[i] % ring->orders[t] * v, ring->orders[t]) != 0 ||
            imod(ring->orders[j] % ring->orders[t] * v, ring->orders[t]) != 0) {
          std::ostringstream os;
          os << "d_" << i << " or d_" << j << " times (b_" << i << " b_" << j
             << ") is nonzero in " << ring->name;
          fail(ErrorKind::OrderIncompatibility, os.str());
        }
      }

  for (size_t j = 0; j < k; ++j) {
    Elem ej(k, 0);
    ej[j] = imod(1, ring->orders[j]);
    if (ring->mul(ring->unit, ej) != ej || ring->mul(ej, ring->unit) != ej) {
      std::ostringstream os;
      os << "unit fails on basis element b_" << j << " in " << ring->name;
      fail(ErrorKind::UnitViolation, os.str());
    }
  }

  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      Elem ei(k, 0), ej(k, 0);
      ei[i] = 1;
      ej[j] = 1;
      for (size_t l = 0; l < k; ++l) {
        Elem el(k, 0);
        el[l] = 1;
        Elem left = ring->mul(ring->mult[i][j], el);
        Elem right = ring->mul(ei, ring->mult[j][l]);
        if (left != right) {
          std::ostringstream os;
          os << "(b_" << i << " b_" << j << ") b_" << l << " != b_" << i << " (b_" << j << " b_"
             << l << ") in " << ring->name;
          fail(ErrorKind::AssociativityViolation, os.str());
        }
      }
    }

  ring->commutative = true;
  for (size_t i = 0; i < k && ring->commutative; ++i)
    for (size_t j = 0; j < k && ring->commutative; ++j)
      if (ring->mult[i][j] != ring->mult[j][i]) ring->commutative = false;

  return ring;
}

RingPtr zero_ring() {
  return make_ring("0", {1}, {{{0}}}, {0});
}

RingPtr opposite_ring(const RingPtr& r) {
  const size_t k = r->orders.size();
  std::vector<std::vector<Vec>> mult(k, std::vector<Vec>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) mult[i][j] = r->mult[j][i];
  return make_ring("op(" + r->name + ")", r->orders, std::move(mult), r->unit);
}

RingPtr product_ring(const RingPtr& a, const RingPtr& b) {
  const size_t ka = a->orders.size(), kb = b->orders.size(), k = ka + kb;
  Vec orders(k), unit(k, 0);
  for (size_t t = 0; t < ka; ++t) orders[t] = a->orders[t];
  for (size_t t = 0; t < kb; ++t) orders[ka + t] = b->orders[t];
  for (size_t t = 0; t < ka; ++t) unit[t] = a->unit[t];
  for (size_t t = 0; t < kb; ++t) unit[ka + t] = b->unit[t];
  std::vector<std::vector<Vec>> mult(k, std::vector<Vec>(k, Vec(k, 0)));
  for (size_t i = 0; i < ka; ++i)
    for (size_t j = 0; j < ka; ++j)
      for (size_t t = 0; t < ka; ++t) mult[i][j][t] = a->mult[i][j][t];
  for (size_t i = 0; i < kb; ++i)
    for (size_t j = 0; j < kb; ++j)
      for (size_t t = 0; t < kb; ++t) mult[ka + i][ka + j][ka + t] = b->mult[i][j][t];
  return make_ring(a->name + " x " + b->name, std::move(orders), std::move(mult),
                   std::move(unit));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a.get() == b.get()) return true;
  return a->structure_key() == b->structure_key();
}

}  // namespace ringlab
