#include "polylab/extract.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "polylab/kernels.hpp"
#include "polylab/lcc.hpp"

namespace polylab {

// ------------------------------------------------------------ Distribution

Distribution Distribution::exact(std::vector<Label> domain, std::vector<Rational> probs) {
  if (domain.size() != probs.size()) throw PreconditionError("domain and probability lengths differ");
  if (domain.empty()) throw PreconditionError("empty domain");
  Rational total = 0;
  for (const auto& p : probs) {
    if (p < 0) throw PreconditionError("negative probability");
    total += p;
  }
  if (total != 1) throw PreconditionError("probabilities must sum to 1");
  Distribution d;
  d.domain_ = std::move(domain);
  d.exact_ = true;
  d.exact_p_ = std::move(probs);
  return d;
}

Distribution Distribution::floating(std::vector<Label> domain, std::vector<double> probs) {
  if (domain.size() != probs.size()) throw PreconditionError("domain and probability lengths differ");
  if (domain.empty()) throw PreconditionError("empty domain");
  double total = 0;
  for (double p : probs) {
    if (!(p >= 0)) throw PreconditionError("negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("probabilities must sum to 1");
  Distribution d;
  d.domain_ = std::move(domain);
  d.exact_ = false;
  d.float_p_ = std::move(probs);
  return d;
}

Distribution Distribution::uniform(std::vector<Label> domain) {
  const auto n = static_cast<long long>(domain.size());
  if (n == 0) throw PreconditionError("empty domain");
  std::vector<Rational> p(domain.size(), Rational(1, n));
  return exact(std::move(domain), std::move(p));
}

std::vector<Distribution::Label> Distribution::index_domain(std::size_t size) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back({static_cast<std::int64_t>(i)});
  return out;
}

std::vector<Distribution::Label> Distribution::field_domain(const FieldSpec& spec, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= spec.order();
    if (total > kDefaultEnumerationCap) throw CapExceeded("q^n exceeds enumeration cap");
  }
  std::vector<Label> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Point p = point_at(spec.order(), n, idx);
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

const std::vector<Rational>& Distribution::exact_probs() const {
  if (!exact_) throw PreconditionError("distribution is in float mode");
  return exact_p_;
}

double Distribution::prob(std::size_t i) const { return exact_ ? to_double(exact_p_.at(i)) : float_p_.at(i); }

Rational Distribution::exact_prob(std::size_t i) const { return exact_probs().at(i); }

std::size_t Distribution::support_size() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < size(); ++i)
    if (exact_ ? exact_p_[i] != 0 : float_p_[i] != 0.0) ++s;
  return s;
}

nlohmann::json Distribution::to_json() const {
  auto probs = nlohmann::json::array();
  for (std::size_t i = 0; i < size(); ++i) {
    if (exact_) probs.push_back(format_rational(exact_p_[i]));
    else probs.push_back(float_p_[i]);
  }
  return {{"domain", domain_}, {"probs", probs}};
}

Distribution Distribution::from_json(const nlohmann::json& j) {
  std::vector<Label> domain;
  for (const auto& d : j.at("domain")) {
    if (d.is_array()) domain.push_back(d.get<Label>());
    else domain.push_back({d.get<std::int64_t>()});
  }
  const auto& probs = j.at("probs");
  if (!probs.is_array() || probs.empty()) throw PreconditionError("probs must be a nonempty array");
  if (probs[0].is_string()) {
    std::vector<Rational> p;
    for (const auto& x : probs) p.push_back(parse_rational(x.get<std::string>()));
    return exact(std::move(domain), std::move(p));
  }
  return floating(std::move(domain), probs.get<std::vector<double>>());
}

// ---------------------------------------------------------------- measures

double min_entropy(const Distribution& d) {
  if (d.is_exact()) {
    const auto& p = d.exact_probs();
    return -std::log2(to_double(*std::max_element(p.begin(), p.end())));
  }
  double best = 0;
  for (std::size_t i = 0; i < d.size(); ++i) best = std::max(best, d.prob(i));
  return -std::log2(best);
}

namespace {
void check_same_domain(const Distribution& a, const Distribution& b) {
  if (a.domain() != b.domain()) throw PreconditionError("distributions live on different domains");
}
}  // namespace

Rational statistical_distance_exact(const Distribution& a, const Distribution& b) {
  check_same_domain(a, b);
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += abs(a.exact_prob(i) - b.exact_prob(i));
  return s / 2;
}

double statistical_distance(const Distribution& a, const Distribution& b) {
  check_same_domain(a, b);
  if (a.is_exact() && b.is_exact()) return to_double(statistical_distance_exact(a, b));
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a.prob(i) - b.prob(i));
  return s / 2;
}

double closeness_to_min_entropy(const Distribution& d, double k) {
  const double cap = std::exp2(-k);
  if (static_cast<double>(d.size()) * cap < 1.0) return 1.0;
  double eps = 0;
  for (std::size_t i = 0; i < d.size(); ++i) eps += std::max(d.prob(i) - cap, 0.0);
  return eps;
}

Rational closeness_to_min_entropy_exact(const Distribution& d, unsigned k) {
  const Rational cap(1, BigInt(1) << k);
  if (Rational(static_cast<long long>(d.size())) * cap < 1) return 1;
  Rational eps = 0;
  for (const auto& p : d.exact_probs())
    if (p > cap) eps += p - cap;
  return eps;
}

// ------------------------------------------------------------------ merger

AdversaryMap nikodym_adversary(const KakeyaWitness& w) {
  if (w.base_of.empty()) throw PreconditionError("witness has no lines");
  const std::uint64_t q = w.spec.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < w.n; ++i) total *= q;
  AdversaryMap adv;
  adv.table.resize(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Point x = point_at(q, w.n, idx);
    const bool zero = std::all_of(x.begin(), x.end(), [](Code c) { return c == 0; });
    const Point& y = zero ? w.base_of.begin()->second : w.base_of.at(canonical_direction(w.spec, x));
    adv.table[idx] = static_cast<std::uint32_t>(point_index(q, y));
  }
  return adv;
}

Distribution merger_distribution(const FieldSpec& spec, std::size_t n, const Distribution& source,
                                 const AdversaryMap& adversary, std::uint64_t cap, Exec exec) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= spec.order();
    if (total > cap) throw CapExceeded("q^n exceeds enumeration cap");
  }
  auto domain = Distribution::field_domain(spec, n);
  if (source.domain() != domain) throw PreconditionError("source must live on F_q^n in code order");
  const auto counts = exec == Exec::serial ? kernels::merger_counts_serial(spec, n, adversary.table)
                                           : kernels::merger_counts_omp(spec, n, adversary.table);
  const long long seeds = static_cast<long long>(spec.order() * spec.order());
  if (source.is_exact()) {
    std::vector<Rational> p(total, 0);
    for (std::uint64_t x = 0; x < total; ++x) {
      const Rational px = source.exact_prob(x);
      if (px == 0) continue;
      for (std::uint64_t z = 0; z < total; ++z)
        if (counts[x][z]) p[z] += px * counts[x][z];
    }
    for (auto& v : p) v /= seeds;
    return Distribution::exact(std::move(domain), std::move(p));
  }
  std::vector<double> p(total, 0.0);
  for (std::uint64_t x = 0; x < total; ++x)
    for (std::uint64_t z = 0; z < total; ++z) p[z] += source.prob(x) * counts[x][z];
  for (auto& v : p) v /= static_cast<double>(seeds);
  return Distribution::floating(std::move(domain), std::move(p));
}

Rational probability_of(const Distribution& d, const std::vector<Point>& event) {
  std::set<Distribution::Label> labels;
  for (const auto& p : event) labels.emplace(p.begin(), p.end());
  Rational s = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (labels.count(d.domain()[i])) s += d.is_exact() ? d.exact_prob(i) : Rational(d.prob(i));
  return s;
}

// --------------------------------------------------------------------- BIW

namespace {
std::vector<Code> as_set(const FieldSpec& spec, std::vector<Code> v) {
  if (v.empty()) throw PreconditionError("empty set");
  for (auto c : v)
    if (c >= spec.order()) throw PreconditionError("element out of range");
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
}  // namespace

GrowthReport biw_growth(const FieldSpec& spec, const std::vector<Code>& a_in, const std::vector<Code>& b_in,
                        const std::vector<Code>& c_in) {
  const auto a = as_set(spec, a_in), b = as_set(spec, b_in), c = as_set(spec, c_in);
  std::vector<bool> hit(spec.order(), false);
  for (auto x : b)
    for (auto y : c) {
      const Code bc = spec.mul(x, y);
      for (auto z : a) hit[spec.add(z, bc)] = true;
    }
  GrowthReport r;
  r.size = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
  r.ratio = a.size() > 1 ? std::log(static_cast<double>(r.size)) / std::log(static_cast<double>(a.size())) : 0.0;
  return r;
}

Distribution biw_combine(const FieldSpec& spec, const Distribution& da, const Distribution& db,
                         const Distribution& dc) {
  auto domain = Distribution::field_domain(spec, 1);
  for (const auto* d : {&da, &db, &dc})
    if (d->domain() != domain) throw PreconditionError("sources must live on F_q in code order");
  const std::uint64_t q = spec.order();
  if (da.is_exact() && db.is_exact() && dc.is_exact()) {
    std::vector<Rational> p(q, 0);
    for (Code b = 0; b < q; ++b)
      for (Code c = 0; c < q; ++c) {
        const Rational pbc = db.exact_prob(b) * dc.exact_prob(c);
        if (pbc == 0) continue;
        for (Code a = 0; a < q; ++a) p[spec.add(a, spec.mul(b, c))] += da.exact_prob(a) * pbc;
      }
    return Distribution::exact(std::move(domain), std::move(p));
  }
  std::vector<double> p(q, 0.0);
  for (Code b = 0; b < q; ++b)
    for (Code c = 0; c < q; ++c)
      for (Code a = 0; a < q; ++a) p[spec.add(a, spec.mul(b, c))] += da.prob(a) * db.prob(b) * dc.prob(c);
  return Distribution::floating(std::move(domain), std::move(p));
}

// -------------------------------------------------------------------- bias

namespace {

std::vector<Z3Vector> as_z3_set(std::vector<Z3Vector> v, std::size_t& dim) {
  if (v.empty()) throw PreconditionError("empty set");
  dim = v[0].size();
  for (const auto& x : v) {
    if (x.size() != dim) throw PreconditionError("vectors of mixed length");
    for (auto c : x)
      if (c > 2) throw PreconditionError("entries must lie in Z_3");
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

unsigned inner_mod3(const Z3Vector& a, const Z3Vector& b) {
  unsigned s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<unsigned>(a[i]) * b[i];
  return s % 3;
}

std::uint64_t pow3(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 3;
  return r;
}

}  // namespace

BiasReport bias(const std::vector<Z3Vector>& a_in, const std::vector<Z3Vector>& b_in, unsigned omega_power) {
  if (omega_power != 1 && omega_power != 2) throw PreconditionError("omega power must be 1 or 2");
  std::size_t na = 0, nb = 0;
  const auto a = as_z3_set(a_in, na), b = as_z3_set(b_in, nb);
  if (na != nb) throw PreconditionError("sets live in different dimensions");
  std::int64_t c[3] = {0, 0, 0};
  for (const auto& x : a)
    for (const auto& y : b) ++c[(omega_power * inner_mod3(x, y)) % 3];
  BiasReport r;
  r.sum = {c[0] - c[2], c[1] - c[2]};
  const double size = static_cast<double>(a.size()) * static_cast<double>(b.size());
  r.value = std::sqrt(static_cast<double>(r.sum.norm())) / size;
  const std::uint64_t group = pow3(na);
  r.bound = std::sqrt(static_cast<double>(group) / size);
  r.within_bound = r.sum.norm() <= static_cast<__int128>(group) * a.size() * b.size();
  return r;
}

namespace {

// Counts of a1 + a2 + a3 + a4 over Z_3^n, indexed base 3 (coordinate 0 least significant).
std::vector<__int128> four_fold_counts(const std::vector<Z3Vector>& a, std::size_t n) {
  const std::uint64_t size = pow3(n);
  auto index = [&](const Z3Vector& v) {
    std::uint64_t idx = 0;
    for (std::size_t i = n; i-- > 0;) idx = idx * 3 + v[i];
    return idx;
  };
  std::vector<std::uint64_t> base(size, 0);
  for (const auto& v : a) ++base[index(v)];
  std::vector<std::uint64_t> digits(size * n);
  for (std::uint64_t x = 0; x < size; ++x) {
    std::uint64_t t = x;
    for (std::size_t i = 0; i < n; ++i, t /= 3) digits[x * n + i] = t % 3;
  }
  auto add_index = [&](std::uint64_t x, std::uint64_t y) {
    std::uint64_t idx = 0;
    for (std::size_t i = n; i-- > 0;) idx = idx * 3 + (digits[x * n + i] + digits[y * n + i]) % 3;
    return idx;
  };
  std::vector<__int128> acc(base.begin(), base.end());
  for (int step = 0; step < 3; ++step) {
    std::vector<__int128> next(size, 0);
    for (std::uint64_t x = 0; x < size; ++x) {
      if (acc[x] == 0) continue;
      for (std::uint64_t y = 0; y < size; ++y)
        if (base[y]) next[add_index(x, y)] += acc[x] * static_cast<__int128>(base[y]);
    }
    acc = std::move(next);
  }
  return acc;
}

double distribution_bias(const std::vector<__int128>& ca, const std::vector<__int128>& cb, std::size_t n,
                         long double total) {
  const std::uint64_t size = ca.size();
  std::vector<unsigned> dig(size * n);
  for (std::uint64_t x = 0; x < size; ++x) {
    std::uint64_t t = x;
    for (std::size_t i = 0; i < n; ++i, t /= 3) dig[x * n + i] = static_cast<unsigned>(t % 3);
  }
  __int128 c[3] = {0, 0, 0};
  for (std::uint64_t x = 0; x < size; ++x) {
    if (ca[x] == 0) continue;
    for (std::uint64_t y = 0; y < size; ++y) {
      if (cb[y] == 0) continue;
      unsigned ip = 0;
      for (std::size_t i = 0; i < n; ++i) ip += dig[x * n + i] * dig[y * n + i];
      c[ip % 3] += ca[x] * cb[y];
    }
  }
  const long double re = static_cast<long double>(c[0] - c[2]) / total;
  const long double im = static_cast<long double>(c[1] - c[2]) / total;
  return static_cast<double>(std::sqrt(std::max(0.0L, re * re - re * im + im * im)));
}

}  // namespace

FourSumReport foursum_bias_check(const std::vector<Z3Vector>& a_in, const std::vector<Z3Vector>& b_in) {
  std::size_t na = 0, nb = 0;
  const auto a = as_z3_set(a_in, na), b = as_z3_set(b_in, nb);
  if (na != nb) throw PreconditionError("sets live in different dimensions");
  if (na > 6) throw CapExceeded("four-sum convolution supports Z_3^n with n <= 6");
  FourSumReport r;
  r.lhs = bias(a, b).value;
  const auto ca = four_fold_counts(a, na), cb = four_fold_counts(b, nb);
  long double total = 1;
  for (int i = 0; i < 4; ++i) total *= static_cast<long double>(a.size()) * static_cast<long double>(b.size());
  r.rhs = std::pow(distribution_bias(ca, cb, na, total), 1.0 / 16.0);
  r.holds = r.lhs <= r.rhs + 1e-12;
  return r;
}

std::vector<Z3Vector> bourgain_source(unsigned p_exp, std::uint64_t cap) {
  if (p_exp == 0) throw PreconditionError("extension degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < p_exp; ++i) {
    q *= 3;
    if (q > cap) throw CapExceeded("3^k exceeds enumeration cap");
  }
  const auto spec = FieldSpec::with_degree(3, p_exp);
  std::vector<Z3Vector> out;
  for (Code x = 0; x < q; ++x) {
    Z3Vector v;
    for (auto d : spec.rep(x)) v.push_back(static_cast<std::uint8_t>(d));
    for (auto d : spec.rep(spec.mul(x, x))) v.push_back(static_cast<std::uint8_t>(d));
    out.push_back(std::move(v));
  }
  return out;
}

BiasSweepReport bias_sweep(unsigned n, Exec exec) {
  const auto s = exec == Exec::serial ? kernels::bias_sweep_serial(n) : kernels::bias_sweep_omp(n);
  return {s.pairs, s.violations, s.worst_ratio};
}

}  // namespace polylab
