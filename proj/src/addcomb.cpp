#include "polylab/addcomb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "polylab/field.hpp"
#include "polylab/kernels.hpp"

namespace polylab {

namespace {

constexpr std::int64_t kMarkLimit = std::int64_t{1} << 24;
constexpr std::size_t kProductCap = 1000;
constexpr std::uint64_t kPairCap = std::uint64_t{1} << 26;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer sum overflows 64 bits");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer product overflows 64 bits");
  return r;
}

std::int64_t mod(std::int64_t a, std::int64_t p) {
  const std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

}  // namespace

// ------------------------------------------------------------------- Group

Group Group::fp(std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw PreconditionError("F_p needs a prime p");
  return {GroupKind::fp, p, 1};
}

Group Group::fp_vec(std::int64_t p, std::size_t dim) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw PreconditionError("F_p^d needs a prime p");
  if (dim == 0) throw PreconditionError("dimension must be positive");
  Group g{GroupKind::fp_vec, p, dim};
  g.order();  // overflow check
  return g;
}

std::int64_t Group::order() const {
  if (kind == GroupKind::integers) throw PreconditionError("the integers have no finite order");
  std::int64_t r = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    r = checked_mul(r, p);
    if (r > (std::int64_t{1} << 40)) throw CapExceeded("group order too large");
  }
  return r;
}

std::int64_t Group::add(std::int64_t a, std::int64_t b) const {
  switch (kind) {
    case GroupKind::integers:
      return checked_add(a, b);
    case GroupKind::fp:
      return (a + b) % p;
    default: {
      std::int64_t out = 0, place = 1;
      for (std::size_t i = 0; i < dim; ++i, place *= p, a /= p, b /= p) out += ((a % p + b % p) % p) * place;
      return out;
    }
  }
}

std::int64_t Group::neg(std::int64_t a) const {
  switch (kind) {
    case GroupKind::integers:
      if (a == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("negation overflows");
      return -a;
    case GroupKind::fp:
      return (p - a) % p;
    default: {
      std::int64_t out = 0, place = 1;
      for (std::size_t i = 0; i < dim; ++i, place *= p, a /= p) out += ((p - a % p) % p) * place;
      return out;
    }
  }
}

std::int64_t Group::mul(std::int64_t a, std::int64_t b) const {
  switch (kind) {
    case GroupKind::integers:
      return checked_mul(a, b);
    case GroupKind::fp:
      return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
    default:
      throw PreconditionError("products need a ring (integers or F_p)");
  }
}

std::int64_t Group::scale(std::int64_t lambda, std::int64_t a) const {
  switch (kind) {
    case GroupKind::integers:
      return checked_mul(lambda, a);
    case GroupKind::fp:
      return mul(mod(lambda, p), a);
    default: {
      const std::int64_t l = mod(lambda, p);
      std::int64_t out = 0, place = 1;
      for (std::size_t i = 0; i < dim; ++i, place *= p, a /= p) out += (l * (a % p) % p) * place;
      return out;
    }
  }
}

std::vector<std::int64_t> Group::coords(std::int64_t a) const {
  if (kind == GroupKind::integers || kind == GroupKind::fp) return {a};
  std::vector<std::int64_t> out(dim);
  for (std::size_t i = 0; i < dim; ++i, a /= p) out[i] = a % p;
  return out;
}

std::int64_t Group::encode(const std::vector<std::int64_t>& c) const {
  if (kind == GroupKind::integers) {
    if (c.size() != 1) throw PreconditionError("integer elements are scalars");
    return c[0];
  }
  if (c.size() != dim) throw PreconditionError("coordinate count does not match the group");
  std::int64_t out = 0;
  for (std::size_t i = dim; i-- > 0;) out = out * p + mod(c[i], p);
  return out;
}

bool Group::contains(std::int64_t a) const { return kind == GroupKind::integers || (a >= 0 && a < order()); }

std::string Group::tag() const {
  switch (kind) {
    case GroupKind::integers:
      return "integers";
    case GroupKind::fp:
      return "F_" + std::to_string(p);
    case GroupKind::fp_vec:
      return "F_" + std::to_string(p) + "^" + std::to_string(dim);
    case GroupKind::z3_vec:
      return "Z_3^" + std::to_string(dim);
  }
  return "?";
}

// -------------------------------------------------------------- AbelianSet

AbelianSet::AbelianSet(Group g, std::vector<std::int64_t> elements) : group_(g), elements_(std::move(elements)) {
  for (auto x : elements_)
    if (!group_.contains(x)) throw PreconditionError("element outside the group " + group_.tag());
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

AbelianSet AbelianSet::from_vectors(Group g, const std::vector<std::vector<std::int64_t>>& vectors) {
  std::vector<std::int64_t> el;
  for (const auto& v : vectors) {
    for (auto c : v)
      if (g.kind != GroupKind::integers && (c < 0 || c >= g.p)) throw PreconditionError("coordinate out of range");
    el.push_back(g.encode(v));
  }
  return AbelianSet(g, std::move(el));
}

bool AbelianSet::contains(std::int64_t x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

nlohmann::json AbelianSet::to_json() const {
  nlohmann::json j;
  switch (group_.kind) {
    case GroupKind::integers:
      j["group"] = "integers";
      break;
    case GroupKind::fp:
      j["group"] = "fp";
      j["p"] = group_.p;
      break;
    case GroupKind::fp_vec:
      j["group"] = "fp_vec";
      j["p"] = group_.p;
      j["dim"] = group_.dim;
      break;
    case GroupKind::z3_vec:
      j["group"] = "z3_vec";
      j["dim"] = group_.dim;
      break;
  }
  if (group_.kind == GroupKind::fp_vec || group_.kind == GroupKind::z3_vec) {
    auto arr = nlohmann::json::array();
    for (auto x : elements_) arr.push_back(group_.coords(x));
    j["elements"] = arr;
  } else {
    j["elements"] = elements_;
  }
  return j;
}

AbelianSet AbelianSet::from_json(const nlohmann::json& j) {
  if (j.is_array()) return AbelianSet(Group::integers(), j.get<std::vector<std::int64_t>>());
  const auto tag = j.value("group", std::string("integers"));
  Group g;
  if (tag == "integers") g = Group::integers();
  else if (tag == "fp") g = Group::fp(j.at("p").get<std::int64_t>());
  else if (tag == "fp_vec") g = Group::fp_vec(j.at("p").get<std::int64_t>(), j.at("dim").get<std::size_t>());
  else if (tag == "z3_vec") g = Group::z3_vec(j.at("dim").get<std::size_t>());
  else throw PreconditionError("unknown group tag: " + tag);
  const auto& el = j.at("elements");
  if (g.kind == GroupKind::fp_vec || g.kind == GroupKind::z3_vec)
    return from_vectors(g, el.get<std::vector<std::vector<std::int64_t>>>());
  return AbelianSet(g, el.get<std::vector<std::int64_t>>());
}

// ------------------------------------------------------------- operations

namespace {

void same_group(const AbelianSet& a, const AbelianSet& b) {
  if (!(a.group() == b.group())) throw PreconditionError("sets live in different groups");
}

template <class Op>
AbelianSet combine(const AbelianSet& a, const AbelianSet& b, Op op) {
  same_group(a, b);
  const Group& g = a.group();
  if (g.finite() && g.order() <= kMarkLimit) {
    std::vector<char> hit(static_cast<std::size_t>(g.order()), 0);
    for (auto x : a.elements())
      for (auto y : b.elements()) hit[static_cast<std::size_t>(op(g, x, y))] = 1;
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < hit.size(); ++i)
      if (hit[i]) out.push_back(static_cast<std::int64_t>(i));
    return AbelianSet(g, std::move(out));
  }
  if (static_cast<std::uint64_t>(a.size()) * b.size() > kPairCap) throw CapExceeded("pairwise enumeration too large");
  std::vector<std::int64_t> out;
  out.reserve(a.size() * b.size());
  for (auto x : a.elements())
    for (auto y : b.elements()) out.push_back(op(g, x, y));
  return AbelianSet(g, std::move(out));
}

}  // namespace

AbelianSet sumset(const AbelianSet& a, const AbelianSet& b) {
  return combine(a, b, [](const Group& g, std::int64_t x, std::int64_t y) { return g.add(x, y); });
}

AbelianSet difference(const AbelianSet& a, const AbelianSet& b) {
  return combine(a, b, [](const Group& g, std::int64_t x, std::int64_t y) { return g.sub(x, y); });
}

AbelianSet productset(const AbelianSet& a, const AbelianSet& b) {
  if (!a.group().has_ring()) throw PreconditionError("products need a ring (integers or F_p)");
  if (a.group().kind == GroupKind::integers && (a.size() > kProductCap || b.size() > kProductCap))
    throw CapExceeded("integer product sets are capped at 1000 elements");
  return combine(a, b, [](const Group& g, std::int64_t x, std::int64_t y) { return g.mul(x, y); });
}

AbelianSet dilate(std::int64_t lambda, const AbelianSet& a) {
  std::vector<std::int64_t> out;
  for (auto x : a.elements()) out.push_back(a.group().scale(lambda, x));
  return AbelianSet(a.group(), std::move(out));
}

AbelianSet negate(const AbelianSet& a) { return dilate(-1, a); }

AbelianSet iterated_sum(const AbelianSet& a, unsigned k) {
  if (k == 0) throw PreconditionError("iterated sum needs k >= 1");
  AbelianSet acc = a;
  for (unsigned i = 1; i < k; ++i) acc = sumset(acc, a);
  return acc;
}

std::uint64_t quadruple_count(const AbelianSet& a, const AbelianSet& b) {
  same_group(a, b);
  if (a.empty() || b.empty()) throw PreconditionError("empty set");
  const Group& g = a.group();
  std::uint64_t q = 0;
  if (g.finite() && g.order() <= kMarkLimit) {
    std::vector<std::uint32_t> hist(static_cast<std::size_t>(g.order()), 0);
    std::vector<std::int64_t> touched;
    for (auto x : a.elements())
      for (auto y : b.elements()) {
        const auto s = static_cast<std::size_t>(g.add(x, y));
        if (hist[s]++ == 0) touched.push_back(static_cast<std::int64_t>(s));
      }
    for (auto s : touched) q += static_cast<std::uint64_t>(hist[static_cast<std::size_t>(s)]) * hist[static_cast<std::size_t>(s)];
    return q;
  }
  std::unordered_map<std::int64_t, std::uint64_t> hist;
  for (auto x : a.elements())
    for (auto y : b.elements()) ++hist[g.add(x, y)];
  for (const auto& [s, c] : hist) q += c * c;
  return q;
}

Rational energy(const AbelianSet& a, const AbelianSet& b) {
  const std::uint64_t q = quadruple_count(a, b);
  const BigInt na = a.size(), nb = b.size();
  return Rational(na * na * nb * nb, BigInt(q));
}

namespace {

void require_fp(const AbelianSet& a) {
  if (a.group().kind != GroupKind::fp) throw PreconditionError("this operation works in F_p");
  if (a.empty()) throw PreconditionError("empty set");
}

std::size_t lambda_sum_size(const AbelianSet& a, std::int64_t lambda, std::vector<char>& hit) {
  const std::int64_t p = a.group().p;
  std::size_t size = 0;
  std::vector<std::int64_t> dil;
  dil.reserve(a.size());
  for (auto x : a.elements()) dil.push_back(x * lambda % p);
  for (auto x : a.elements())
    for (auto y : dil) {
      auto& h = hit[static_cast<std::size_t>((x + y) % p)];
      if (!h) {
        h = 1;
        ++size;
      }
    }
  for (auto x : a.elements())
    for (auto y : dil) hit[static_cast<std::size_t>((x + y) % p)] = 0;
  return size;
}

}  // namespace

LambdaChoice find_good_lambda(const AbelianSet& a) {
  require_fp(a);
  const std::int64_t p = a.group().p;
  std::vector<char> hit(static_cast<std::size_t>(p), 0);
  LambdaChoice best;
  best.size = 0;
  for (std::int64_t l = 1; l < p; ++l) {
    const std::size_t s = lambda_sum_size(a, l, hit);
    if (s > best.size) best = {l, s, false};
  }
  const auto n = static_cast<std::int64_t>(a.size());
  best.meets_bound = 2 * static_cast<std::int64_t>(best.size) >= std::min(n * n, p);
  return best;
}

AbelianSet stab(const AbelianSet& a, const Rational& k) {
  require_fp(a);
  const std::int64_t p = a.group().p;
  std::vector<char> hit(static_cast<std::size_t>(p), 0);
  std::vector<std::int64_t> out;
  const Rational limit = k * static_cast<long long>(a.size());
  for (std::int64_t l = 1; l < p; ++l)
    if (Rational(static_cast<long long>(lambda_sum_size(a, l, hit))) <= limit) out.push_back(l);
  return AbelianSet(a.group(), std::move(out));
}

AbelianSet growth_set(const AbelianSet& a) {
  require_fp(a);
  const AbelianSet sq = productset(a, a);
  const AbelianSet three = iterated_sum(sq, 3);
  return difference(three, three);
}

bool growth_bound_holds(const AbelianSet& a, const AbelianSet& growth) {
  const auto n = static_cast<std::int64_t>(a.size());
  return 2 * static_cast<std::int64_t>(growth.size()) >= std::min(n * n, a.group().p);
}

// --------------------------------------------------------------------- BSG

BsgResult bsg_extract(const AbelianSet& a, const AbelianSet& b,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges, const Rational& k,
                      const Rational& eps, Exec exec) {
  same_group(a, b);
  if (a.size() != b.size() || a.empty()) throw PreconditionError("BSG needs |A| = |B| = N > 0");
  if (edges.empty()) throw PreconditionError("pair graph has no edges");
  if (k <= 0 || eps <= 0) throw PreconditionError("K and eps must be positive");
  const Group& g = a.group();
  const std::size_t n = a.size();
  BsgResult res{AbelianSet(g, {}), AbelianSet(g, {}), {}};
  auto& rep = res.report;
  rep.n = n;

  // Popular differences among the graph's edges.
  std::vector<std::pair<std::size_t, std::size_t>> e = edges;
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  std::unordered_map<std::int64_t, std::uint64_t> r;
  for (const auto& [i, j] : e) {
    if (i >= n || j >= n) throw PreconditionError("edge index out of range");
    ++r[g.sub(a.elements()[i], b.elements()[j])];
  }
  const Rational threshold = Rational(static_cast<long long>(n)) / (2 * k);
  std::unordered_map<std::int64_t, bool> popular;
  for (const auto& [x, c] : r)
    if (Rational(static_cast<long long>(c)) >= threshold) popular[x] = true;
  rep.popular = popular.size();
  if (popular.empty()) {
    rep.note = "no popular differences: |R(x)| < N/2K for every x";
    return res;
  }

  // H: edges with popular labels. V = A side, U = B side.
  std::vector<std::vector<std::uint8_t>> adj(n, std::vector<std::uint8_t>(n, 0));  // adj[v][u]
  std::vector<std::vector<std::uint32_t>> nbr_u(n);                                 // neighbours of u in V
  for (const auto& [i, j] : e)
    if (popular.count(g.sub(a.elements()[i], b.elements()[j]))) {
      adj[i][j] = 1;
      nbr_u[j].push_back(static_cast<std::uint32_t>(i));
      ++rep.h_edges;
    }
  const Rational nn = Rational(static_cast<long long>(n));
  rep.alpha = Rational(static_cast<long long>(rep.h_edges)) / (nn * nn);

  // Common neighbours and bad pairs (ordered, diagonal included).
  std::vector<std::vector<std::uint64_t>> codeg(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t u = 0; u < n; ++u)
    for (auto v1 : nbr_u[u])
      for (auto v2 : nbr_u[u]) ++codeg[v1][v2];
  const Rational bad_limit = eps * rep.alpha * rep.alpha * nn / 2;
  std::vector<std::vector<std::uint8_t>> bad(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t v1 = 0; v1 < n; ++v1)
    for (std::size_t v2 = 0; v2 < n; ++v2)
      bad[v1][v2] = Rational(static_cast<long long>(codeg[v1][v2])) <= bad_limit ? 1 : 0;

  // Derandomized choice of u: maximize eps |G(u)|^2 - |S_u|.
  const auto unordered = exec == Exec::serial ? kernels::bad_pairs_per_vertex_serial(nbr_u, bad)
                                              : kernels::bad_pairs_per_vertex_omp(nbr_u, bad);
  std::optional<Rational> best;
  for (std::size_t u = 0; u < n; ++u) {
    std::uint64_t s_u = 2 * unordered[u];
    for (auto v : nbr_u[u]) s_u += bad[v][v];
    const auto deg = static_cast<long long>(nbr_u[u].size());
    const Rational score = eps * deg * deg - Rational(static_cast<long long>(s_u));
    if (!best || score > *best) {
      best = score;
      rep.chosen_u = u;
    }
  }
  const auto& v_prime = nbr_u[*rep.chosen_u];
  rep.v_prime = v_prime.size();
  const Rational slack = 2 * eps * static_cast<long long>(v_prime.size());

  std::vector<std::uint32_t> v2;
  for (auto v : v_prime) {
    long long bad_partners = 0;
    for (auto w : v_prime) bad_partners += bad[v][w];
    if (Rational(bad_partners) <= slack) v2.push_back(v);
  }
  std::vector<std::uint32_t> u2;
  for (std::size_t u = 0; u < n; ++u) {
    long long into = 0;
    for (auto v : v2) into += adj[v][u];
    if (Rational(into) > slack) u2.push_back(static_cast<std::uint32_t>(u));
  }
  if (v2.empty() || u2.empty()) {
    rep.note = "pruning emptied one side";
    return res;
  }

  std::vector<std::int64_t> ap, bp;
  for (auto v : v2) ap.push_back(a.elements()[v]);
  for (auto u : u2) bp.push_back(b.elements()[u]);
  res.a_prime = AbelianSet(g, ap);
  res.b_prime = AbelianSet(g, bp);
  rep.a_prime = res.a_prime.size();
  rep.b_prime = res.b_prime.size();
  rep.diff_size = difference(res.a_prime, res.b_prime).size();
  rep.sum_size = sumset(res.a_prime, res.b_prime).size();

  // Paths v - u1 - v1 - u: sum over v1 of codeg(v, v1) * adj[v1][u].
  std::uint64_t min_paths = std::numeric_limits<std::uint64_t>::max();
  for (auto v : v2)
    for (auto u : u2) {
      std::uint64_t paths = 0;
      for (std::size_t v1 = 0; v1 < n; ++v1)
        if (adj[v1][u]) paths += codeg[v][v1];
      min_paths = std::min(min_paths, paths);
    }
  rep.min_three_paths = min_paths;

  const double logk = std::log(to_double(k));
  const double dn = static_cast<double>(n);
  const double smaller = static_cast<double>(std::min(rep.a_prime, rep.b_prime));
  if (logk > 0) {
    rep.size_exponent = std::log(dn / smaller) / logk;
    rep.sum_exponent = std::log(static_cast<double>(rep.sum_size) / dn) / logk;
  }
  return res;
}

// ------------------------------------------------------------------- Ruzsa

RuzsaCover ruzsa_cover(const AbelianSet& a_in) {
  const Group& g = a_in.group();
  if (!g.finite() || g.kind == GroupKind::integers) throw PreconditionError("covering works in F_p^d");
  if (a_in.empty()) throw PreconditionError("empty set");
  std::vector<std::int64_t> sym = a_in.elements();
  for (auto x : a_in.elements()) sym.push_back(g.neg(x));
  sym.push_back(0);
  const AbelianSet a(g, sym);
  const AbelianSet two = sumset(a, a);
  const AbelianSet three = sumset(two, a);

  RuzsaCover out;
  out.symmetric_size = a.size();
  out.three_a_size = three.size();
  const auto order = static_cast<std::size_t>(g.order());
  std::vector<char> used(order, 0);
  for (auto b : three.elements()) {
    bool free = true;
    for (auto x : a.elements())
      if (used[static_cast<std::size_t>(g.add(x, b))]) {
        free = false;
        break;
      }
    if (!free) continue;
    for (auto x : a.elements()) used[static_cast<std::size_t>(g.add(x, b))] = 1;
    out.b_list.push_back(b);
  }

  // Recount the translates independently of the greedy bookkeeping.
  std::vector<int> mult(order, 0);
  for (auto b : out.b_list)
    for (auto x : a.elements()) ++mult[static_cast<std::size_t>(g.add(x, b))];
  out.disjoint = std::all_of(mult.begin(), mult.end(), [](int m) { return m <= 1; });

  std::vector<char> cover(order, 0);
  for (auto b : out.b_list)
    for (auto x : two.elements()) cover[static_cast<std::size_t>(g.add(x, b))] = 1;
  out.covered = std::all_of(three.elements().begin(), three.elements().end(),
                            [&](std::int64_t x) { return cover[static_cast<std::size_t>(x)] != 0; });

  std::vector<std::vector<std::uint32_t>> rows;
  for (auto x : a.elements()) {
    std::vector<std::uint32_t> row;
    for (auto c : g.coords(x)) row.push_back(static_cast<std::uint32_t>(c));
    rows.push_back(std::move(row));
  }
  const std::size_t rank = kernels::rank_mod_p_serial(rows, static_cast<std::uint32_t>(g.p));
  out.span_size = 1;
  for (std::size_t i = 0; i < rank; ++i) out.span_size *= static_cast<std::uint64_t>(g.p);
  return out;
}

// ------------------------------------------------------------ sum-product

SumProductStats sum_product_stats(const AbelianSet& a) {
  if (a.empty()) throw PreconditionError("empty set");
  if (!a.group().has_ring()) throw PreconditionError("sum-product statistics need a ring");
  SumProductStats s;
  s.sum = sumset(a, a).size();
  const AbelianSet prod = productset(a, a);
  s.product = prod.size();
  s.max = std::max(s.sum, s.product);
  s.product_difference = difference(prod, prod).size();
  const double n = static_cast<double>(a.size());
  s.elekes_ratio = static_cast<double>(s.max) / std::pow(n, 1.25);
  s.gk_ratio = a.size() > 1 ? static_cast<double>(s.product_difference) / (n * n / std::log(n)) : 0.0;
  return s;
}

}  // namespace polylab
