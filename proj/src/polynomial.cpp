#include "tetralab/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace tetralab {

HoloPolynomial HoloPolynomial::constant(cd c, Ambient ambient) {
  return monomial({0, 0, 0}, c, ambient);
}

HoloPolynomial HoloPolynomial::monomial(const MultiIndex& m, cd c, Ambient ambient) {
  HoloPolynomial p(ambient);
  p.add_term(m, c);
  return p;
}

HoloPolynomial HoloPolynomial::phi3(Ambient ambient) {
  HoloPolynomial p(ambient);
  p.add_term({1, 1, 0}, 1.0);
  p.add_term({0, 0, 2}, -1.0);
  return p;
}

cd HoloPolynomial::coefficient(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cd{} : it->second;
}

int HoloPolynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

HoloPolynomial& HoloPolynomial::add_term(const MultiIndex& m, cd c) {
  if (c == cd{}) return *this;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cd{}) terms_.erase(it);
  }
  return *this;
}

HoloPolynomial& HoloPolynomial::operator+=(const HoloPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

HoloPolynomial& HoloPolynomial::operator-=(const HoloPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

HoloPolynomial& HoloPolynomial::operator*=(cd c) {
  if (c == cd{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

HoloPolynomial operator*(const HoloPolynomial& a, const HoloPolynomial& b) {
  HoloPolynomial out(a.ambient());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_term(ma + mb, ca * cb);
  return out;
}

HoloPolynomial HoloPolynomial::pow(int e) const {
  HoloPolynomial out = constant(1.0, ambient_);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

HoloPolynomial& HoloPolynomial::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kPruneThreshold; });
  return *this;
}

namespace {
cd ipow(cd z, int e) {
  cd r = 1.0;
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}
}  // namespace

cd HoloPolynomial::evaluate(const Triple& z) const {
  cd s = 0.0;
  for (const auto& [m, c] : terms_) s += c * ipow(z[0], m.a1) * ipow(z[1], m.a2) * ipow(z[2], m.a3);
  return s;
}

HoloPolynomial HoloPolynomial::compose_phi() const {
  const HoloPolynomial p3 = phi3(Ambient::Cartan);
  HoloPolynomial out(Ambient::Cartan);
  for (const auto& [m, c] : terms_)
    out += monomial({m.a1, m.a2, 0}, c, Ambient::Cartan) * p3.pow(m.a3);
  return out;
}

HoloPolynomial HoloPolynomial::compose_sigma() const {
  HoloPolynomial out(ambient_);
  for (const auto& [m, c] : terms_) out.add_term(m, (m.a3 % 2 == 0) ? c : -c);
  return out;
}

bool HoloPolynomial::approx_equal(const HoloPolynomial& o, double tol) const {
  HoloPolynomial diff = *this - o;
  return std::all_of(diff.terms_.begin(), diff.terms_.end(),
                     [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

}  // namespace tetralab
