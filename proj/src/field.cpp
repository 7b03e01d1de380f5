#include "polylab/field.hpp"

#include <algorithm>
#include <sstream>

namespace polylab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // over F_p, constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw PreconditionError("inverse of zero");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo b (b nonzero), coefficients mod p.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  trim(out);
  return out;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// Quotient and remainder.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint32_t factor = static_cast<std::uint32_t>(std::uint64_t{a.back()} * lead_inv % p);
    const std::size_t shift = a.size() - b.size();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = std::uint64_t{factor} * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  trim(q);
  return {q, a};
}

// Inverse of a modulo an irreducible modulus, by the extended Euclidean algorithm.
Poly poly_inv(const Poly& a, const Poly& modulus, std::uint32_t p) {
  Poly r0 = modulus, r1 = a, s0, s1{1};
  trim(r1);
  if (r1.empty()) throw PreconditionError("inverse of zero");
  while (!(r1.size() == 1)) {
    auto [q, r] = poly_divmod(r0, r1, p);
    Poly s = poly_sub(s0, poly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) throw PreconditionError("modulus is not irreducible");
  }
  const std::uint32_t c = inv_mod(r1[0], p);
  for (auto& x : s1) x = static_cast<std::uint32_t>(std::uint64_t{x} * c % p);
  return poly_mod(s1, modulus, p);
}

std::vector<std::uint32_t> builtin_modulus(std::uint64_t q) {
  switch (q) {
    case 4: return {1, 1, 1};      // x^2 + x + 1
    case 8: return {1, 1, 0, 1};   // x^3 + x + 1
    case 9: return {1, 0, 1};      // x^2 + 1
    case 16: return {1, 1, 0, 0, 1};  // x^4 + x + 1
    case 27: return {1, 2, 0, 1};  // x^3 + 2x + 1
    default: return {};
  }
}

constexpr std::uint64_t kTableLimit = 256;

}  // namespace

struct FieldSpec::Impl {
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint64_t> pow_p;
  // Full tables for small extension fields.
  std::vector<Code> add_tab, mul_tab, inv_tab;

  Poly to_poly(Code a) const {
    Poly out(m);
    for (std::uint32_t i = 0; i < m; ++i) {
      out[i] = a % p;
      a /= p;
    }
    trim(out);
    return out;
  }
  Code from_poly(const Poly& a) const {
    Code c = 0;
    for (std::size_t i = a.size(); i-- > 0;) c = static_cast<Code>(c * p + a[i]);
    return c;
  }
  Code add_slow(Code a, Code b) const {
    Code out = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      const std::uint32_t d = (a % p + b % p) % p;
      out += static_cast<Code>(d * pow_p[i]);
      a /= p;
      b /= p;
    }
    return out;
  }
  Code mul_slow(Code a, Code b) const {
    return from_poly(poly_mod(poly_mul(to_poly(a), to_poly(b), p), modulus, p));
  }
  Code inv_slow(Code a) const { return from_poly(poly_inv(to_poly(a), modulus, p)); }
};

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->m = 1;
  impl->q = p;
  impl->pow_p = {1};
  return FieldSpec(std::move(impl));
}

bool FieldSpec::is_irreducible(std::uint32_t p, std::span<const std::uint32_t> modulus) {
  if (modulus.size() < 2) return false;
  const std::size_t m = modulus.size() - 1;
  if (m == 1) return true;
  const Poly f(modulus.begin(), modulus.end());
  // Trial division by every monic polynomial of degree 1..m/2.
  for (std::size_t d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec FieldSpec::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2) throw PreconditionError("modulus must have degree >= 1");
  for (auto c : modulus)
    if (c >= p) throw PreconditionError("modulus coefficient out of range");
  if (modulus.back() != 1) throw PreconditionError("modulus must be monic");
  if (modulus.size() == 2) return prime(p);
  if (!is_irreducible(p, modulus)) throw PreconditionError("modulus is reducible over F_p");

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->m = static_cast<std::uint32_t>(modulus.size() - 1);
  impl->modulus = std::move(modulus);
  impl->pow_p.assign(impl->m, 1);
  for (std::uint32_t i = 1; i < impl->m; ++i) impl->pow_p[i] = impl->pow_p[i - 1] * p;
  impl->q = impl->pow_p.back() * p;
  if (impl->q > (std::uint64_t{1} << 31)) throw PreconditionError("field too large");
  if (impl->q <= kTableLimit) {
    const auto q = impl->q;
    impl->add_tab.resize(q * q);
    impl->mul_tab.resize(q * q);
    impl->inv_tab.assign(q, 0);
    for (Code a = 0; a < q; ++a)
      for (Code b = 0; b < q; ++b) {
        impl->add_tab[a * q + b] = impl->add_slow(a, b);
        impl->mul_tab[a * q + b] = impl->mul_slow(a, b);
      }
    for (Code a = 1; a < q; ++a) impl->inv_tab[a] = impl->inv_slow(a);
  }
  return FieldSpec(std::move(impl));
}

FieldSpec FieldSpec::builtin(std::uint64_t q) {
  if (is_prime(q)) return prime(static_cast<std::uint32_t>(q));
  auto mod = builtin_modulus(q);
  if (mod.empty()) throw PreconditionError("no built-in field of order " + std::to_string(q));
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  return extension(p, std::move(mod));
}

FieldSpec FieldSpec::with_degree(std::uint32_t p, std::uint32_t m) {
  if (m == 0) throw PreconditionError("extension degree must be >= 1");
  if (m == 1) return prime(p);
  if (!is_prime(p)) throw PreconditionError("characteristic is not prime");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < m; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> f(m + 1, 0);
    std::uint64_t rest = idx;
    // Lexicographic from the x^{m-1} coefficient down.
    for (std::uint32_t i = m; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    f[m] = 1;
    if (f[0] != 0 && is_irreducible(p, f)) return extension(p, std::move(f));
  }
  throw PreconditionError("no irreducible polynomial found");
}

std::uint32_t FieldSpec::p() const { return impl_->p; }
std::uint32_t FieldSpec::m() const { return impl_->m; }
std::uint64_t FieldSpec::order() const { return impl_->q; }
const std::vector<std::uint32_t>& FieldSpec::modulus() const { return impl_->modulus; }

Code FieldSpec::from_int(std::int64_t v) const {
  const std::int64_t p = impl_->p;
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Code>(r);
}

Code FieldSpec::add(Code a, Code b) const {
  const Impl& f = *impl_;
  if (f.m == 1) {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Code>(s >= f.p ? s - f.p : s);
  }
  if (!f.add_tab.empty()) return f.add_tab[a * f.q + b];
  return f.add_slow(a, b);
}

Code FieldSpec::neg(Code a) const {
  const Impl& f = *impl_;
  if (f.m == 1) return a == 0 ? 0 : f.p - a;
  Code out = 0;
  for (std::uint32_t i = 0; i < f.m; ++i) {
    const std::uint32_t d = a % f.p;
    out += static_cast<Code>(((f.p - d) % f.p) * f.pow_p[i]);
    a /= f.p;
  }
  return out;
}

Code FieldSpec::sub(Code a, Code b) const { return add(a, neg(b)); }

Code FieldSpec::mul(Code a, Code b) const {
  const Impl& f = *impl_;
  if (f.m == 1) return static_cast<Code>(std::uint64_t{a} * b % f.p);
  if (!f.mul_tab.empty()) return f.mul_tab[a * f.q + b];
  return f.mul_slow(a, b);
}

Code FieldSpec::inv(Code a) const {
  const Impl& f = *impl_;
  if (a == 0) throw PreconditionError("inverse of zero");
  if (f.m == 1) return inv_mod(a, f.p);
  if (!f.inv_tab.empty()) return f.inv_tab[a];
  return f.inv_slow(a);
}

Code FieldSpec::pow(Code a, std::uint64_t e) const {
  Code result = one();
  Code base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint32_t> FieldSpec::rep(Code a) const {
  std::vector<std::uint32_t> out(impl_->m);
  for (auto& d : out) {
    d = a % impl_->p;
    a /= impl_->p;
  }
  return out;
}

Code FieldSpec::from_rep(std::span<const std::uint32_t> r) const {
  if (r.size() != impl_->m) throw PreconditionError("rep length does not match extension degree");
  Code c = 0;
  for (std::size_t i = r.size(); i-- > 0;) {
    if (r[i] >= impl_->p) throw PreconditionError("rep digit out of range");
    c = static_cast<Code>(c * impl_->p + r[i]);
  }
  return c;
}

bool FieldSpec::same_as(const FieldSpec& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->p == other.impl_->p && impl_->m == other.impl_->m &&
         impl_->modulus == other.impl_->modulus;
}

std::string FieldSpec::describe() const {
  std::ostringstream os;
  os << "F_" << order();
  if (m() > 1) {
    os << " = F_" << p() << "[x]/(";
    bool first = true;
    for (std::size_t i = modulus().size(); i-- > 0;) {
      if (modulus()[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (modulus()[i] != 1 || i == 0) os << modulus()[i];
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

FieldElement::FieldElement(FieldSpec spec, Code code) : spec_(std::move(spec)), code_(code) {
  if (code_ >= spec_.order()) throw PreconditionError("field element code out of range");
}

FieldElement FieldElement::from_rep(FieldSpec spec, std::span<const std::uint32_t> rep) {
  const Code c = spec.from_rep(rep);
  return FieldElement(std::move(spec), c);
}

FieldElement FieldElement::from_int(FieldSpec spec, std::int64_t v) {
  const Code c = spec.from_int(v);
  return FieldElement(std::move(spec), c);
}

namespace {
void require_same(const FieldElement& a, const FieldElement& b) {
  if (!(a.spec() == b.spec())) throw PreconditionError("field spec mismatch");
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.spec_, a.spec_.add(a.code_, b.code_));
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.spec_, a.spec_.sub(a.code_, b.code_));
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.spec_, a.spec_.mul(a.code_, b.code_));
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.spec_, a.spec_.div(a.code_, b.code_));
}
FieldElement FieldElement::operator-() const { return FieldElement(spec_, spec_.neg(code_)); }
FieldElement FieldElement::inv() const { return FieldElement(spec_, spec_.inv(code_)); }
FieldElement FieldElement::pow(std::uint64_t e) const { return FieldElement(spec_, spec_.pow(code_, e)); }

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement inv(const FieldElement& a) { return a.inv(); }

std::vector<FieldElement> enumerate(const FieldSpec& spec, std::uint64_t cap) {
  if (spec.order() > cap)
    throw CapExceeded("field order " + std::to_string(spec.order()) + " exceeds enumeration cap");
  std::vector<FieldElement> out;
  out.reserve(spec.order());
  for (std::uint64_t c = 0; c < spec.order(); ++c) out.emplace_back(spec, static_cast<Code>(c));
  return out;
}

nlohmann::json to_json(const FieldSpec& spec) {
  nlohmann::json j;
  j["p"] = spec.p();
  j["m"] = spec.m();
  if (spec.m() > 1) j["modulus"] = spec.modulus();
  return j;
}

FieldSpec field_from_json(const nlohmann::json& j) {
  const auto p = j.at("p").get<std::uint32_t>();
  const auto m = j.value("m", 1u);
  if (m == 1) {
    if (j.contains("modulus")) throw PreconditionError("modulus must be omitted when m = 1");
    return FieldSpec::prime(p);
  }
  auto mod = j.at("modulus").get<std::vector<std::uint32_t>>();
  if (mod.size() != m + 1) throw PreconditionError("modulus must have m + 1 coefficients");
  return FieldSpec::extension(p, std::move(mod));
}

}  // namespace polylab
