#include "polylab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "polylab/kernels.hpp"
#include "polylab/linalg.hpp"

namespace polylab {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t point_index(std::uint64_t q, std::span<const Code> point) {
  std::uint64_t idx = 0;
  for (auto c : point) idx = idx * q + c;
  return idx;
}

Point point_at(std::uint64_t q, std::size_t n, std::uint64_t index) {
  Point p(n);
  for (std::size_t i = n; i-- > 0;) {
    p[i] = static_cast<Code>(index % q);
    index /= q;
  }
  return p;
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(FieldSpec spec, std::vector<Code> coeffs)
    : spec_(std::move(spec)), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Code UniPoly::evaluate(Code t) const {
  Code acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = spec_.add(spec_.mul(acc, t), coeffs_[i]);
  return acc;
}

UniPoly UniPoly::operator*(const UniPoly& other) const {
  if (coeffs_.empty() || other.coeffs_.empty()) return UniPoly(spec_);
  std::vector<Code> out(coeffs_.size() + other.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      out[i + j] = spec_.add(out[i + j], spec_.mul(coeffs_[i], other.coeffs_[j]));
  return UniPoly(spec_, std::move(out));
}

UniPoly UniPoly::operator+(const UniPoly& other) const {
  std::vector<Code> out(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spec_.add(coeff(i), other.coeff(i));
  return UniPoly(spec_, std::move(out));
}

UniPoly UniPoly::interpolate(const FieldSpec& spec, std::span<const Code> xs, std::span<const Code> ys) {
  if (xs.size() != ys.size()) throw PreconditionError("interpolation needs matching xs and ys");
  UniPoly result(spec);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UniPoly basis(spec, {1});
    Code denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UniPoly(spec, {spec.neg(xs[j]), 1});
      const Code diff = spec.sub(xs[i], xs[j]);
      if (diff == 0) throw PreconditionError("interpolation nodes must be distinct");
      denom = spec.mul(denom, diff);
    }
    const Code scale = spec.mul(ys[i], spec.inv(denom));
    std::vector<Code> scaled = basis.coeffs();
    for (auto& c : scaled) c = spec.mul(c, scale);
    result = result + UniPoly(spec, std::move(scaled));
  }
  return result;
}

Code lagrange_evaluate(const FieldSpec& spec, std::span<const Code> xs, std::span<const Code> ys, Code t) {
  Code acc = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Code num = 1, den = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      num = spec.mul(num, spec.sub(t, xs[j]));
      den = spec.mul(den, spec.sub(xs[i], xs[j]));
    }
    acc = spec.add(acc, spec.mul(ys[i], spec.div(num, den)));
  }
  return acc;
}

// -------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(FieldSpec spec, std::size_t n_vars) : spec_(std::move(spec)), n_vars_(n_vars) {
  if (n_vars_ == 0) throw PreconditionError("polynomial needs at least one variable");
}

MultiPoly MultiPoly::constant(FieldSpec spec, std::size_t n_vars, Code c) {
  MultiPoly f(std::move(spec), n_vars);
  f.add_term(Exponents(n_vars, 0), c);
  return f;
}

MultiPoly MultiPoly::variable(FieldSpec spec, std::size_t n_vars, std::size_t index) {
  MultiPoly f(std::move(spec), n_vars);
  Exponents e(n_vars, 0);
  if (index >= n_vars) throw PreconditionError("variable index out of range");
  e[index] = 1;
  f.add_term(e, 1);
  return f;
}

void MultiPoly::check_exponents(const Exponents& e) const {
  if (e.size() != n_vars_) throw PreconditionError("exponent vector has wrong arity");
}

int MultiPoly::degree() const {
  int d = kZeroPolyDegree;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += static_cast<int>(x);
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::add_term(const Exponents& e, Code c) {
  check_exponents(e);
  if (c >= spec_.order()) throw PreconditionError("coefficient code out of range");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = spec_.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

Code MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

Code MultiPoly::evaluate(std::span<const Code> point) const {
  if (point.size() != n_vars_) throw PreconditionError("point arity does not match polynomial");
  Code acc = 0;
  for (const auto& [e, c] : terms_) {
    Code term = c;
    for (std::size_t i = 0; i < n_vars_; ++i)
      if (e[i] != 0) term = spec_.mul(term, spec_.pow(point[i], e[i]));
    acc = spec_.add(acc, term);
  }
  return acc;
}

FieldElement MultiPoly::evaluate(std::span<const FieldElement> point) const {
  Point codes;
  codes.reserve(point.size());
  for (const auto& x : point) {
    if (!(x.spec() == spec_)) throw PreconditionError("field spec mismatch");
    codes.push_back(x.code());
  }
  return FieldElement(spec_, evaluate(codes));
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  if (!(spec_ == other.spec_) || n_vars_ != other.n_vars_) throw PreconditionError("polynomial mismatch");
  MultiPoly out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const { return *this + other.scaled(spec_.neg(1)); }

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  if (!(spec_ == other.spec_) || n_vars_ != other.n_vars_) throw PreconditionError("polynomial mismatch");
  MultiPoly out(spec_, n_vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : other.terms_) {
      Exponents e(n_vars_);
      for (std::size_t i = 0; i < n_vars_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, spec_.mul(c1, c2));
    }
  return out;
}

MultiPoly MultiPoly::scaled(Code c) const {
  MultiPoly out(spec_, n_vars_);
  if (c == 0) return out;
  for (const auto& [e, x] : terms_) out.terms_.emplace(e, spec_.mul(x, c));
  return out;
}

MultiPoly MultiPoly::top_part() const {
  MultiPoly out(spec_, n_vars_);
  const int d = degree();
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += static_cast<int>(x);
    if (s == d) out.terms_.emplace(e, c);
  }
  return out;
}

std::string MultiPoly::to_text() const {
  if (terms_.empty()) return "0";
  // Highest total degree first, then lexicographically descending.
  std::vector<std::pair<Exponents, Code>> ordered(terms_.begin(), terms_.end());
  auto total = [](const Exponents& e) {
    std::uint64_t s = 0;
    for (auto x : e) s += x;
    return s;
  };
  std::sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
    const auto da = total(a.first), db = total(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    if (!first) os << " + ";
    first = false;
    bool wrote = false;
    if (c != 1 || total(e) == 0) {
      os << c;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << i;
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

namespace {

std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  s = trim_ws(s);
  if (s.empty()) throw PreconditionError("missing " + std::string(what));
  std::uint64_t v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw PreconditionError("malformed " + std::string(what) + ": " + std::string(s));
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    if (v > (std::uint64_t{1} << 40)) throw PreconditionError(std::string(what) + " too large");
  }
  return v;
}

}  // namespace

MultiPoly MultiPoly::parse(const FieldSpec& spec, std::size_t n_vars, std::string_view text) {
  MultiPoly f(spec, n_vars);
  // Split on top-level + and -, remembering the sign of each term.
  std::vector<std::pair<bool, std::string_view>> pieces;
  bool negative = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const bool at_end = i == text.size();
    if (at_end || text[i] == '+' || text[i] == '-') {
      auto piece = trim_ws(text.substr(start, i - start));
      if (!piece.empty()) pieces.emplace_back(negative, piece);
      else if (!at_end && !pieces.empty() && i > 0)
        throw PreconditionError("dangling operator in polynomial text");
      if (!at_end) negative = text[i] == '-';
      start = i + 1;
    }
  }
  if (pieces.empty()) throw PreconditionError("empty polynomial text");
  for (const auto& [neg, piece] : pieces) {
    std::uint64_t coeff = 1;
    Exponents e(n_vars, 0);
    std::size_t s = 0;
    for (std::size_t i = 0; i <= piece.size(); ++i) {
      if (i != piece.size() && piece[i] != '*') continue;
      auto factor = trim_ws(piece.substr(s, i - s));
      s = i + 1;
      if (factor.empty()) throw PreconditionError("empty factor in polynomial text");
      if (factor[0] == 'x') {
        const auto caret = factor.find('^');
        const auto idx = parse_uint(factor.substr(1, caret == std::string_view::npos ? factor.npos : caret - 1),
                                    "variable index");
        if (idx >= n_vars) throw PreconditionError("variable x" + std::to_string(idx) + " out of range");
        const auto pw = caret == std::string_view::npos ? 1 : parse_uint(factor.substr(caret + 1), "exponent");
        e[idx] += static_cast<std::uint32_t>(pw);
      } else {
        coeff = coeff * (parse_uint(factor, "coefficient") % spec.order()) % spec.order();
      }
    }
    Code c = spec.m() == 1 ? spec.from_int(static_cast<std::int64_t>(coeff)) : static_cast<Code>(coeff);
    if (neg) c = spec.neg(c);
    f.add_term(e, c);
  }
  return f;
}

nlohmann::json MultiPoly::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& [e, c] : terms_) arr.push_back({{"e", e}, {"c", c}});
  return arr;
}

MultiPoly MultiPoly::from_json(const FieldSpec& spec, std::size_t n_vars, const nlohmann::json& j) {
  if (!j.is_array()) throw PreconditionError("polynomial JSON must be a term list");
  MultiPoly f(spec, n_vars);
  for (const auto& t : j) {
    auto e = t.at("e").get<Exponents>();
    const auto& c = t.at("c");
    Code code;
    if (c.is_array()) {
      code = spec.from_rep(c.get<std::vector<std::uint32_t>>());
    } else {
      const auto v = c.get<std::int64_t>();
      code = spec.m() == 1 ? spec.from_int(v) : static_cast<Code>(v);
    }
    f.add_term(e, code);
  }
  return f;
}

// -------------------------------------------------------------- operations

std::vector<Exponents> monomials_up_to(std::size_t n_vars, std::uint32_t d) {
  std::vector<Exponents> out;
  for (std::uint32_t deg = 0; deg <= d; ++deg) {
    // Lexicographically descending compositions of deg into n_vars parts.
    Exponents e(n_vars, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::uint32_t remaining) -> void {
      if (pos + 1 == n_vars) {
        e[pos] = remaining;
        out.push_back(e);
        return;
      }
      for (std::uint32_t k = remaining + 1; k-- > 0;) {
        e[pos] = k;
        self(self, pos + 1, remaining - k);
      }
    };
    rec(rec, 0, deg);
  }
  return out;
}

std::vector<std::vector<Code>> evaluation_matrix(const FieldSpec& spec, std::span<const Point> points,
                                                 std::span<const Exponents> monomials) {
  std::vector<std::vector<Code>> rows;
  rows.reserve(points.size());
  std::uint32_t max_e = 0;
  for (const auto& m : monomials)
    for (auto x : m) max_e = std::max(max_e, x);
  for (const auto& pt : points) {
    // powers[i][k] = pt[i]^k
    std::vector<std::vector<Code>> powers(pt.size(), std::vector<Code>(max_e + 1, 1));
    for (std::size_t i = 0; i < pt.size(); ++i)
      for (std::uint32_t k = 1; k <= max_e; ++k) powers[i][k] = spec.mul(powers[i][k - 1], pt[i]);
    std::vector<Code> row;
    row.reserve(monomials.size());
    for (const auto& m : monomials) {
      if (m.size() != pt.size()) throw PreconditionError("point arity does not match monomials");
      Code v = 1;
      for (std::size_t i = 0; i < m.size(); ++i) v = spec.mul(v, powers[i][m[i]]);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t count_zeros(const MultiPoly& f, std::uint64_t cap, Exec exec) {
  if (f.is_zero()) throw PreconditionError("count_zeros requires a nonzero polynomial");
  const auto compiled = kernels::CompiledPoly::from(f);
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < f.n_vars(); ++i) {
    space *= f.spec().order();
    if (space > cap) throw CapExceeded("q^n exceeds enumeration cap");
  }
  return exec == Exec::serial ? kernels::count_zeros_serial(compiled) : kernels::count_zeros_omp(compiled);
}

std::optional<MultiPoly> vanishing_poly(const FieldSpec& spec, std::size_t n_vars,
                                        std::span<const Point> points, int degree_cap) {
  if (degree_cap < 0) throw PreconditionError("degree cap must be nonnegative");
  for (const auto& p : points)
    if (p.size() != n_vars) throw PreconditionError("point arity mismatch");
  const auto monos = monomials_up_to(n_vars, static_cast<std::uint32_t>(degree_cap));
  auto rows = evaluation_matrix(spec, points, monos);
  auto x = null_vector(FiniteField{spec}, std::move(rows), monos.size());
  if (!x) return std::nullopt;
  MultiPoly g(spec, n_vars);
  for (std::size_t k = 0; k < monos.size(); ++k) g.add_term(monos[k], (*x)[k]);
  return g;
}

UniPoly restrict_to_line(const MultiPoly& f, std::span<const Code> a, std::span<const Code> b) {
  const auto& spec = f.spec();
  if (a.size() != f.n_vars() || b.size() != f.n_vars()) throw PreconditionError("line arity mismatch");
  if (std::all_of(b.begin(), b.end(), [](Code c) { return c == 0; }))
    throw PreconditionError("line direction must be nonzero");
  UniPoly h(spec);
  std::vector<UniPoly> linear;
  for (std::size_t i = 0; i < f.n_vars(); ++i) linear.emplace_back(spec, std::vector<Code>{a[i], b[i]});
  for (const auto& [e, c] : f.terms()) {
    UniPoly term(spec, {c});
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) term = term * linear[i];
    h = h + term;
  }
  return h;
}

std::vector<MultiPoly> gradient(const MultiPoly& f) {
  const auto& spec = f.spec();
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < f.n_vars(); ++i) {
    MultiPoly d(spec, f.n_vars());
    for (const auto& [e, c] : f.terms()) {
      if (e[i] == 0) continue;
      const Code factor = spec.from_int(e[i]);
      if (factor == 0) continue;
      Exponents e2 = e;
      --e2[i];
      d.add_term(e2, spec.mul(c, factor));
    }
    out.push_back(std::move(d));
  }
  return out;
}

MultiPoly homogenize(const MultiPoly& f) {
  if (f.is_zero()) throw PreconditionError("cannot homogenize the zero polynomial");
  const auto d = static_cast<std::uint32_t>(f.degree());
  MultiPoly out(f.spec(), f.n_vars() + 1);
  for (const auto& [e, c] : f.terms()) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    Exponents e2;
    e2.reserve(e.size() + 1);
    e2.push_back(d - s);
    e2.insert(e2.end(), e.begin(), e.end());
    out.add_term(e2, c);
  }
  return out;
}

MultiPoly substitute(const MultiPoly& f, std::size_t var, Code value) {
  if (var >= f.n_vars()) throw PreconditionError("variable index out of range");
  MultiPoly out(f.spec(), f.n_vars());
  for (const auto& [e, c] : f.terms()) {
    Exponents e2 = e;
    e2[var] = 0;
    out.add_term(e2, f.spec().mul(c, f.spec().pow(value, e[var])));
  }
  return out;
}

}  // namespace polylab
