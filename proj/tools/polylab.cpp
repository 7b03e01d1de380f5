#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polylab/acceptance.hpp"
#include "polylab/addcomb.hpp"
#include "polylab/extract.hpp"
#include "polylab/incidence.hpp"
#include "polylab/kakeya.hpp"
#include "polylab/lcc.hpp"
#include "polylab/poly.hpp"
#include "polylab/report.hpp"
#include "polylab/rng.hpp"
#include "polylab/scaling.hpp"
#include "polylab/sgdesign.hpp"

using namespace polylab;
using nlohmann::json;

namespace {

/// Bad input files or arguments that CLI11 cannot see; exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::uint64_t cap = kDefaultEnumerationCap;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(RunReport& r, const std::string& name, const std::string& path) {
  const auto text = read_file(path);
  r.add_input(name, text);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<Point2> points_from_json(const json& j) {
  if (!j.is_array()) throw InputError("points must be an array of pairs");
  std::vector<Point2> out;
  for (const auto& p : j) out.push_back(point2_from_json(p));
  return out;
}

/// CSV of numbers; an optional first line "mode,exact" or "mode,float".
struct CsvMatrix {
  RealMatrix values;
  std::string mode = "exact";
};

CsvMatrix read_matrix(RunReport& r, const std::string& path) {
  const auto text = read_file(path);
  r.add_input("matrix", text);
  CsvMatrix m;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first && !cells.empty() && cells[0] == "mode") {
      if (cells.size() != 2 || (cells[1] != "exact" && cells[1] != "float"))
        throw InputError("mode line must be mode,exact or mode,float");
      m.mode = cells[1];
      first = false;
      continue;
    }
    first = false;
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        row.push_back(m.mode == "exact" ? to_double(parse_rational(c)) : std::stod(c));
      } catch (const std::exception&) {
        throw InputError("bad matrix entry '" + c + "'");
      }
    }
    m.values.push_back(std::move(row));
  }
  if (m.values.empty()) throw InputError("empty matrix");
  return m;
}

json vec_json(const std::vector<double>& v) { return json(v); }

MultiPoly random_poly(const FieldSpec& spec, std::size_t n, std::uint32_t degree, std::uint64_t seed) {
  auto rng = make_stream(seed, "cli.lcc.poly");
  MultiPoly f(spec, n);
  for (const auto& mono : monomials_up_to(n, degree))
    f.add_term(mono, static_cast<Code>(std::uniform_int_distribution<std::uint64_t>(0, spec.order() - 1)(rng)));
  return f;
}

// --------------------------------------------------------------- commands

void kakeya_build(RunReport& r, const Globals& g, std::uint32_t q, std::size_t n) {
  const auto w = build_kakeya(q, n, g.cap);
  const bool ok = verify_kakeya(w, g.cap);
  r.check("kakeya.verified", ok);
  std::uint64_t qn = 1, qn1 = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= q;
  qn1 = qn / q;
  const Rational bound = Rational(BigInt(qn), BigInt(1) << (n - 1)) + 2 * Rational(BigInt(qn1));
  r.check("kakeya.size_bound", Rational(BigInt(w.points.size())) <= bound, Tagged::of_u(w.points.size()),
          Tagged::of(bound), "<=");
  r.set_output("size", Tagged::of_u(w.points.size()));
  r.set_output("witness", to_json(w));
}

KakeyaWitness load_kakeya(RunReport& r, const std::string& path, std::uint64_t cap) {
  auto j = read_json(r, "set", path);
  // a report written by `kakeya build --out` carries the witness under outputs
  if (j.contains("outputs") && j["outputs"].contains("witness")) j = j["outputs"]["witness"];
  if (j.contains("base_of")) return kakeya_from_json(j);
  const auto q = j.at("q").get<std::uint32_t>();
  const auto n = j.at("n").get<std::size_t>();
  std::vector<Point> pts = j.at("points").get<std::vector<Point>>();
  auto w = find_kakeya_witness(FieldSpec::prime(q), n, std::move(pts), cap);
  if (!w) {
    KakeyaWitness empty{FieldSpec::prime(q), n, {}, {}};
    empty.points = j.at("points").get<std::vector<Point>>();
    return empty;
  }
  return *w;
}

void kakeya_verify(RunReport& r, const Globals& g, const std::string& path) {
  const auto w = load_kakeya(r, path, g.cap);
  const bool ok = !w.base_of.empty() && verify_kakeya(w, g.cap);
  r.set_output("size", Tagged::of_u(w.points.size()));
  r.check("kakeya.verified", ok);
}

void kakeya_certify(RunReport& r, const Globals& g, const std::string& path) {
  const auto w = load_kakeya(r, path, g.cap);
  const auto cert = certify_lower_bound(w.spec, w.n, w.points);
  r.set_output("rank", Tagged::of_u(cert.rank));
  r.set_output("monomials", Tagged::of_u(cert.monomial_count));
  r.check("kakeya.certificate.rank", cert.rank == cert.monomial_count, Tagged::of_u(cert.rank),
          Tagged::of_u(cert.monomial_count), "==");
  r.check("kakeya.certificate.size", w.points.size() >= cert.monomial_count, Tagged::of_u(w.points.size()),
          Tagged::of_u(cert.monomial_count), ">=");
  r.check("kakeya.certificate.factorial", meets_factorial_bound(w.points.size(), w.spec.order(), w.n));
}

void extract_merger(RunReport& r, const Globals& g, std::uint32_t q, std::size_t n, const std::string& source_path) {
  const auto spec = FieldSpec::prime(q);
  const auto w = build_kakeya(q, n, g.cap);
  const auto nik = nikodym_from_kakeya(w, g.cap);
  const auto adv = nikodym_adversary(w);
  const auto source = source_path.empty() ? Distribution::uniform(Distribution::field_domain(spec, n))
                                          : Distribution::from_json(read_json(r, "source", source_path));
  const auto z = merger_distribution(spec, n, source, adv, g.cap);
  const Rational pr = probability_of(z, nik.points);
  r.set_output("nikodym_size", Tagged::of_u(nik.points.size()));
  r.set_output("probability_in_nikodym", Tagged::of(pr));
  r.set_output("output_min_entropy", Tagged::of_float(min_entropy(z)));
  r.check("extract.merger.attack", pr >= 1 - Rational(1, q), Tagged::of(pr), Tagged::of(1 - Rational(1, q)), ">=");
}

std::vector<Z3Vector> z3_from_json(const json& j) {
  std::vector<Z3Vector> out;
  for (const auto& v : j) {
    Z3Vector x;
    for (const auto& c : v) {
      const auto val = c.get<int>();
      if (val < 0 || val > 2) throw InputError("Z_3 coordinates must be 0, 1 or 2");
      x.push_back(static_cast<std::uint8_t>(val));
    }
    out.push_back(std::move(x));
  }
  return out;
}

void extract_bias(RunReport& r, unsigned n, const std::string& a_path, const std::string& b_path,
                  const std::string& sets_path) {
  if (!a_path.empty() || !b_path.empty() || !sets_path.empty()) {
    std::vector<Z3Vector> a, b;
    if (!sets_path.empty()) {
      if (!a_path.empty() || !b_path.empty()) throw InputError("--sets excludes --a and --b");
      const auto j = read_json(r, "sets", sets_path);
      a = z3_from_json(j.at("a"));
      b = z3_from_json(j.at("b"));
    } else {
      if (a_path.empty() || b_path.empty()) throw InputError("--a and --b go together");
      a = z3_from_json(read_json(r, "a", a_path));
      b = z3_from_json(read_json(r, "b", b_path));
    }
    const auto rep = bias(a, b);
    r.set_output("bias", Tagged::of_float(rep.value));
    r.set_output("bound", Tagged::of_float(rep.bound));
    r.check("extract.bias.bound", rep.within_bound, Tagged::of_float(rep.value), Tagged::of_float(rep.bound), "<=");
    const auto four = foursum_bias_check(a, b);
    r.set_output("foursum_rhs", Tagged::of_float(four.rhs));
    r.check("extract.foursum", four.holds, Tagged::of_float(four.lhs), Tagged::of_float(four.rhs), "<=");
    return;
  }
  const auto sweep = bias_sweep(n);
  r.set_output("pairs", Tagged::of_u(sweep.pairs));
  r.set_output("worst_ratio", Tagged::of_float(sweep.worst_ratio));
  r.check("extract.bias.sweep", sweep.violations == 0, Tagged::of_u(sweep.violations), Tagged::of(0), "==");
}

/// --poly accepts inline text, or a file holding text or a JSON term list.
MultiPoly load_poly(RunReport& r, const FieldSpec& spec, std::size_t m, std::uint32_t e, const std::string& poly,
                    std::uint64_t seed) {
  if (poly.empty()) return random_poly(spec, m, e, seed);
  std::ifstream probe(poly);
  if (!probe) return MultiPoly::parse(spec, m, poly);
  const auto text = read_file(poly);
  r.add_input("poly", text);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      return MultiPoly::from_json(spec, m, json::parse(text));
    } catch (const json::exception& ex) {
      throw InputError(poly + ": " + ex.what());
    }
  }
  return MultiPoly::parse(spec, m, text);
}

void lcc_encode(RunReport& r, const Globals& g, std::uint32_t q, std::size_t m, std::uint32_t e,
                const std::string& poly) {
  const auto spec = FieldSpec::builtin(q);
  const RMCode code(spec, m, e);
  const auto f = load_poly(r, spec, m, e, poly, g.seed);
  if (f.degree() > static_cast<int>(e)) throw InputError("polynomial degree exceeds e");
  const auto word = code.encode(f);
  r.set_output("polynomial", f.to_text());
  r.set_output("codeword", json(word));
  r.set_output("length", Tagged::of_u(code.length()));
  r.set_output("dimension", Tagged::of_u(code.dimension()));
  const auto zero = zero_error_enumeration(code, word);
  r.check("lcc.codeword.decodes", zero.rate() == 1, Tagged::of(zero.rate()), Tagged::of(1), "==");
}

void lcc_correct(RunReport& r, const Globals& g, std::uint32_t q, std::size_t m, std::uint32_t e, unsigned errors,
                 std::uint64_t trials, const std::string& poly) {
  if (errors > 1) throw InputError("--errors must be 0 or 1");
  const auto spec = FieldSpec::builtin(q);
  const RMCode code(spec, m, e);
  const auto f = load_poly(r, spec, m, e, poly, g.seed);
  const auto word = code.encode(f);
  DecodingStats st;
  if (trials > 0)
    st = decode_trials(code, word, trials, errors, g.seed);
  else
    st = errors == 0 ? zero_error_enumeration(code, word) : single_error_enumeration(code, word);
  r.set_output("successes", Tagged::of_u(st.successes));
  r.set_output("total", Tagged::of_u(st.total));
  r.set_output("success_rate", Tagged::of(st.rate()));
  r.set_output("mode", trials > 0 ? "sampled" : "enumerated");
  if (errors == 0) {
    r.check("lcc.correct.no_errors", st.rate() == 1, Tagged::of(st.rate()), Tagged::of(1), "==");
  } else if (trials == 0) {
    // the corrupted coordinate sits on one of the lines through i
    const Rational floor = 1 - Rational(1, code.lines_per_point());
    r.check("lcc.correct.one_error", st.rate() >= floor, Tagged::of(st.rate()), Tagged::of(floor), ">=");
  }
}

/// Decodes coordinate `pos` (every coordinate when absent) of a received word.
/// The reference symbol is the word's own value there, so a word that is a
/// codeword measures the decoder and any other word measures agreement.
void lcc_correct_word(RunReport& r, const Globals& g, std::uint32_t q, std::size_t m, std::uint32_t e,
                      unsigned errors, std::uint64_t trials, const std::string& poly, const std::string& word_path,
                      std::optional<std::size_t> pos) {
  if (errors > 1) throw InputError("--errors must be 0 or 1");
  const auto spec = FieldSpec::builtin(q);
  const RMCode code(spec, m, e);
  std::vector<Code> word;
  if (word_path.empty()) {
    word = code.encode(load_poly(r, spec, m, e, poly, g.seed));
  } else {
    const auto j = read_json(r, "word", word_path);
    if (!j.is_array()) throw InputError("word must be a JSON array of residues");
    for (const auto& x : j) {
      const auto v = x.get<std::int64_t>();
      if (v < 0 || static_cast<std::uint64_t>(v) >= q) throw InputError("word symbol out of range");
      word.push_back(static_cast<Code>(v));
    }
  }
  if (word.size() != code.length())
    throw InputError("word length " + std::to_string(word.size()) + " != q^m = " + std::to_string(code.length()));
  if (pos && *pos >= code.length()) throw InputError("--pos out of range");
  const bool is_codeword = zero_error_enumeration(code, word).rate() == 1;
  const std::size_t lo = pos ? *pos : 0, hi = pos ? *pos + 1 : code.length();
  DecodingStats st;
  if (trials > 0) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      auto rng = make_stream(g.seed, "cli.lcc.correct", t);
      const std::size_t i = lo + std::uniform_int_distribution<std::size_t>(0, hi - lo - 1)(rng);
      auto received = word;
      if (errors == 1) {
        std::size_t j = std::uniform_int_distribution<std::size_t>(0, code.length() - 2)(rng);
        if (j >= i) ++j;
        const Code shift = static_cast<Code>(std::uniform_int_distribution<std::uint32_t>(1, q - 1)(rng));
        received[j] = spec.add(received[j], shift);
      }
      st.successes += local_correct(code, received, i, rng) == word[i];
      ++st.total;
    }
  } else {
    auto received = word;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t line = 0; line < code.lines_per_point(); ++line) {
        if (errors == 0) {
          st.successes += code.decode_along(word, i, line) == word[i];
          ++st.total;
          continue;
        }
        for (std::size_t j = 0; j < code.length(); ++j) {
          if (j == i) continue;
          for (Code v = 1; v < q; ++v) {
            received[j] = spec.add(word[j], v);
            st.successes += code.decode_along(received, i, line) == word[i];
            ++st.total;
          }
          received[j] = word[j];
        }
      }
  }
  r.set_output("is_codeword", is_codeword);
  if (pos) r.set_output("position", Tagged::of_u(*pos));
  r.set_output("successes", Tagged::of_u(st.successes));
  r.set_output("total", Tagged::of_u(st.total));
  r.set_output("success_rate", Tagged::of(st.rate()));
  r.set_output("mode", trials > 0 ? "sampled" : "enumerated");
  if (!is_codeword) return;
  if (errors == 0)
    r.check("lcc.correct.no_errors", st.rate() == 1, Tagged::of(st.rate()), Tagged::of(1), "==");
  else if (trials == 0) {
    const Rational floor = 1 - Rational(1, code.lines_per_point());
    r.check("lcc.correct.one_error", st.rate() >= floor, Tagged::of(st.rate()), Tagged::of(floor), ">=");
  }
}

void addcomb_energy(RunReport& r, const std::string& a_path, const std::string& b_path) {
  const auto a = AbelianSet::from_json(read_json(r, "a", a_path));
  const auto b = b_path.empty() ? a : AbelianSet::from_json(read_json(r, "b", b_path));
  const auto q = quadruple_count(a, b);
  const auto s = sumset(a, b).size();
  const Rational e = energy(a, b);
  r.set_output("quadruples", Tagged::of_u(q));
  r.set_output("sumset", Tagged::of_u(s));
  r.set_output("energy", Tagged::of(e));
  const std::uint64_t mx = std::max(a.size(), b.size());
  r.check("addcomb.energy.lower", e >= Rational(mx), Tagged::of(e), Tagged::of_u(mx), ">=");
  r.check("addcomb.energy.upper", e <= Rational(s), Tagged::of(e), Tagged::of_u(s), "<=");
}

void report_bsg(RunReport& r, const AbelianSet& a, const AbelianSet& b, const BsgResult& res);

void addcomb_bsg(RunReport& r, const std::string& a_path, const std::string& b_path, const std::string& edges_path,
                 const std::string& k_text) {
  const auto a = AbelianSet::from_json(read_json(r, "a", a_path));
  const auto b = b_path.empty() ? a : AbelianSet::from_json(read_json(r, "b", b_path));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (edges_path.empty()) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) edges.emplace_back(i, j);
  } else {
    edges = read_json(r, "edges", edges_path).get<std::vector<std::pair<std::size_t, std::size_t>>>();
  }
  report_bsg(r, a, b, bsg_extract(a, b, edges, parse_rational(k_text)));
}

void report_bsg(RunReport& r, const AbelianSet& a, const AbelianSet& b, const BsgResult& res) {
  const auto& rep = res.report;
  r.set_output("a_prime", res.a_prime.to_json());
  r.set_output("b_prime", res.b_prime.to_json());
  r.set_output("sum_size", Tagged::of_u(rep.sum_size));
  r.set_output("diff_size", Tagged::of_u(rep.diff_size));
  r.set_output("popular", Tagged::of_u(rep.popular));
  r.set_output("size_exponent", Tagged::of_float(rep.size_exponent));
  r.set_output("sum_exponent", Tagged::of_float(rep.sum_exponent));
  if (!rep.note.empty()) r.set_output("note", rep.note);
  bool inside = true;
  for (auto x : res.a_prime.elements()) inside = inside && a.contains(x);
  for (auto x : res.b_prime.elements()) inside = inside && b.contains(x);
  r.check("addcomb.bsg.subsets", inside);
}

void addcomb_bsg_graph(RunReport& r, const std::string& path, const std::string& k_text) {
  const auto j = read_json(r, "graph", path);
  const auto a = AbelianSet::from_json(j.at("a"));
  const auto b = j.contains("b") ? AbelianSet::from_json(j.at("b")) : a;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (j.contains("edges")) {
    edges = j.at("edges").get<std::vector<std::pair<std::size_t, std::size_t>>>();
  } else {
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y) edges.emplace_back(x, y);
  }
  report_bsg(r, a, b, bsg_extract(a, b, edges, parse_rational(k_text)));
}

void incidence_count(RunReport& r, const std::string& points_path, const std::string& lines_path) {
  const auto pts = points_from_json(read_json(r, "points", points_path));
  std::vector<Line2> lines;
  if (lines_path.empty()) {
    for (const auto& s : spanned_lines(pts)) lines.push_back(s.line);
  } else {
    for (const auto& l : read_json(r, "lines", lines_path)) lines.push_back(line2_from_json(l));
  }
  const auto inc = count_incidences(pts, lines);
  const auto beck = beck_stats(pts);
  r.set_output("incidences", Tagged::of_u(inc));
  r.set_output("lines", Tagged::of_u(lines.size()));
  r.set_output("lines_spanned", Tagged::of_u(beck.lines_spanned));
  r.set_output("max_collinear", Tagged::of_u(beck.max_collinear));
  const auto cs = cs_bounds(inc, pts.size(), lines.size());
  r.check("incidence.cauchy_schwarz.points", cs.point_form);
  r.check("incidence.cauchy_schwarz.lines", cs.line_form);
}

void incidence_grid(RunReport& r, std::int64_t m) {
  const auto g = st_grid(m);
  const auto inc = count_incidences(g.points, g.lines);
  const auto want = static_cast<std::uint64_t>(m * m * m * m);
  r.set_output("points", Tagged::of_u(g.points.size()));
  r.set_output("lines", Tagged::of_u(g.lines.size()));
  r.set_output("incidences", Tagged::of_u(inc));
  r.check("incidence.st_grid", inc == want, Tagged::of_u(inc), Tagged::of_u(want), "==");
  r.check("incidence.cauchy_schwarz", cs_bounds(inc, g.points.size(), g.lines.size()).both());
}

void incidence_joints(RunReport& r, std::int64_t n) {
  const auto lines = joints_grid(n);
  const auto rep = count_joints(lines);
  const auto want = static_cast<std::uint64_t>(n * n * n);
  const std::uint64_t l = lines.size();
  r.set_output("lines", Tagged::of_u(l));
  r.set_output("joints", Tagged::of_u(rep.count()));
  r.check("incidence.joints.count", rep.count() == want, Tagged::of_u(rep.count()), Tagged::of_u(want), "==");
  r.check("incidence.joints.bound", rep.count() * rep.count() <= l * l * l, Tagged::of_u(rep.count() * rep.count()),
          Tagged::of_u(l * l * l), "<=");
}

void incidence_distances(RunReport& r, const std::string& points_path) {
  const auto pts = points_from_json(read_json(r, "points", points_path));
  const auto st = distance_stats(pts);
  r.set_output("distinct_distances", Tagged::of_u(st.distinct_nonzero));
  r.set_output("distinct_with_zero", Tagged::of_u(st.distinct_with_zero));
  r.set_output("quadruples", Tagged::of_u(st.q_all));
  r.set_output("nondegenerate_quadruples", Tagged::of_u(st.q_nondegenerate));
  r.check("incidence.distances.bound", st.bound_holds, Tagged::of_u(st.distinct_with_zero),
          Tagged::of(st.lower_bound), ">=");
  if (st.q_nondegenerate > 0)
    r.check("incidence.distances.nondegenerate", st.nondegenerate_holds, Tagged::of_u(st.distinct_nonzero),
            Tagged::of(st.nondegenerate_bound), ">=");
}

void sg_check(RunReport& r, const std::string& path, const std::string& delta_text) {
  const auto c = Configuration::from_json(read_json(r, "config", path));
  const Rational delta = parse_rational(delta_text);
  const auto res = check_sg(c, delta);
  r.set_output("holds", res.holds);
  r.set_output("coverage", json(res.coverage));
  if (res.failing) r.set_output("failing_point", Tagged::of_u(*res.failing));
  r.set_output("special_lines", json(c.special_lines()));
  if (c.is_rational() && c.dim() == 2) {
    std::vector<Point2> pts;
    for (const auto& p : c.rational_points()) pts.push_back({p[0], p[1]});
    r.set_output("ordinary_lines", Tagged::of_u(ordinary_lines(pts).size()));
  }
  // Sylvester-Gallai: a real configuration with every pair on a special line is collinear.
  if (c.is_rational() && res.holds && delta == 1)
    r.check("sg.collinear_when_complete", c.homogeneous_rank() <= 2, Tagged::of_u(c.homogeneous_rank()),
            Tagged::of(2), "<=");
}

void sg_design(RunReport& r, const std::string& path, const std::string& delta_text) {
  const auto c = Configuration::from_json(read_json(r, "config", path));
  Rational delta;
  if (delta_text.empty()) {
    const auto cov = check_sg(c, 0).coverage;
    delta = Rational(BigInt(*std::min_element(cov.begin(), cov.end())), BigInt(c.size()));
  } else {
    delta = parse_rational(delta_text);
  }
  const auto res = design_from_config(c, delta);
  r.set_output("delta", Tagged::of(delta));
  r.set_output("rows", Tagged::of_u(res.matrix.rows()));
  r.set_output("q", Tagged::of_u(res.params.q));
  r.set_output("k", Tagged::of_u(res.params.k));
  r.set_output("t", Tagged::of_u(res.params.t));
  r.set_output("rank", Tagged::of_u(res.rank));
  r.set_output("rank_lower_bound", Tagged::of(res.bound));
  r.set_output("configuration_rank", Tagged::of_u(res.config_rank));
  r.check("sg.design.annihilates", res.annihilates);
  r.check("sg.design.rank_bound", Rational(res.rank) >= res.bound, Tagged::of_u(res.rank), Tagged::of(res.bound),
          ">=");
  r.check("sg.design.row_support", res.params.q == 3, Tagged::of_u(res.params.q), Tagged::of(3), "==");
  r.check("sg.design.pair_cap", res.params.t <= 6, Tagged::of_u(res.params.t), Tagged::of(6), "<=");
}

void report_scaling(RunReport& r, const RealMatrix& b, const ScalingResult& s) {
  r.set_output("rho", vec_json(s.rho));
  r.set_output("gamma", vec_json(s.gamma));
  r.set_output("scaled", json(apply_scaling(b, s)));
  r.set_output("iterations", Tagged::of_u(s.iterations));
  r.set_output("achieved_eps", Tagged::of_float(s.achieved_eps));
}

void scale_sinkhorn(RunReport& r, const std::string& path, double eps, std::uint64_t max_iters) {
  const auto m = read_matrix(r, path);
  r.set_output("input_mode", m.mode);
  const auto s = sinkhorn_scale(m.values, eps, max_iters);
  report_scaling(r, m.values, s);
  r.check("scale.sinkhorn.converged", s.converged, Tagged::of_float(s.achieved_eps), Tagged::of_float(eps), "<=");
}

void scale_potential(RunReport& r, const std::string& path, const std::string& target_path, double tol,
                     std::uint64_t max_iters) {
  const auto m = read_matrix(r, path);
  r.set_output("input_mode", m.mode);
  std::vector<double> rows, cols;
  if (target_path.empty()) {
    const double k = static_cast<double>(m.values.size()) / static_cast<double>(m.values.front().size());
    rows.assign(m.values.size(), 1.0);
    cols.assign(m.values.front().size(), k);
  } else {
    const auto t = read_json(r, "target", target_path);
    rows = t.at("rows").get<std::vector<double>>();
    cols = t.at("cols").get<std::vector<double>>();
  }
  const auto s = scale_by_potential(m.values, rows, cols, 1.0, tol, max_iters);
  report_scaling(r, m.values, s);
  r.check("scale.potential.converged", s.converged);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polylab: exact instances of polynomial-method constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "run seed")->capture_default_str();
  app.add_option("--out", g.out, "write the report here instead of stdout");
  app.add_option("--format,--report", g.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--cap", g.cap, "enumeration cap")->capture_default_str();

  std::string command;
  std::function<void(RunReport&)> action;
  auto group = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->require_subcommand(1);
    s->fallthrough();
    return s;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto bind = [&](CLI::App* s, std::string name, std::function<void(RunReport&)> f) {
    s->callback([&command, &action, name = std::move(name), f = std::move(f)] {
      command = name;
      action = f;
    });
  };

  // kakeya
  std::uint32_t q = 5;
  std::size_t n = 2, m = 2;
  std::string set_path, source_path, a_path, b_path, edges_path, points_path, lines_path, config_path, matrix_path,
      target_path, poly_text, k_text = "2", delta_text = "1", filter;
  auto* kak = group("kakeya", "Kakeya sets and certificates");
  auto* kb = leaf(kak, "build", "build the explicit Kakeya set");
  kb->add_option("--q", q, "odd prime")->required();
  kb->add_option("--n", n, "dimension")->required();
  bind(kb, "kakeya build", [&](RunReport& r) { kakeya_build(r, g, q, n); });
  auto* kv = leaf(kak, "verify", "check that a set contains a line in every direction");
  kv->add_option("--set,--in", set_path, "JSON set")->required()->check(CLI::ExistingFile);
  bind(kv, "kakeya verify", [&](RunReport& r) { kakeya_verify(r, g, set_path); });
  auto* kc = leaf(kak, "certify", "evaluation-matrix rank certificate");
  kc->add_option("--set,--in", set_path, "JSON set")->required()->check(CLI::ExistingFile);
  bind(kc, "kakeya certify", [&](RunReport& r) { kakeya_certify(r, g, set_path); });

  // extract
  unsigned bias_n = 2;
  auto* ex = group("extract", "mergers and bias");
  auto* em = leaf(ex, "merger", "Nikodym attack on the line merger");
  em->add_option("--q", q, "prime")->required();
  em->add_option("--n", n, "dimension")->required();
  em->add_option("--source", source_path, "distribution JSON over F_q^n")->check(CLI::ExistingFile);
  std::string adversary = "nikodym";
  em->add_option("--adversary", adversary, "line-choosing adversary")->check(CLI::IsMember({"nikodym"}))
      ->capture_default_str();
  bind(em, "extract merger", [&](RunReport& r) { extract_merger(r, g, q, n, source_path); });
  auto* eb = leaf(ex, "bias", "bias over Z_3^n");
  eb->add_option("--n", bias_n, "dimension for the exhaustive sweep")->check(CLI::Range(1, 2));
  eb->add_option("--a", a_path, "JSON list of Z_3 vectors")->check(CLI::ExistingFile);
  eb->add_option("--b", b_path, "JSON list of Z_3 vectors")->check(CLI::ExistingFile);
  std::string sets_path;
  eb->add_option("--sets", sets_path, "JSON {\"a\": [...], \"b\": [...]}")->check(CLI::ExistingFile);
  bind(eb, "extract bias", [&](RunReport& r) { extract_bias(r, bias_n, a_path, b_path, sets_path); });

  // lcc
  unsigned errors = 0;
  std::uint64_t trials = 0;
  auto* lc = group("lcc", "Reed-Muller local correction");
  auto* le = leaf(lc, "encode", "evaluate a polynomial on F_q^m");
  auto* lr = leaf(lc, "correct", "local decoding success rate");
  std::optional<std::uint32_t> degree;
  std::string word_path;
  std::optional<std::size_t> pos;
  for (auto* s : {le, lr}) {
    s->add_option("--q", q, "field size")->capture_default_str();
    s->add_option("--m", m, "number of variables")->capture_default_str();
    s->add_option("--e", degree, "degree (default q - 2)");
    s->add_option("--poly", poly_text, "polynomial text or JSON term-list file; random when omitted");
  }
  lr->add_option("--word", word_path, "received word, JSON array of residues")->check(CLI::ExistingFile);
  lr->add_option("--pos", pos, "correct this coordinate only");
  lr->add_option("--errors", errors, "0 or 1")->capture_default_str();
  lr->add_option("--trials", trials, "sampled decodes; 0 enumerates")->capture_default_str();
  auto deg = [&] { return degree ? *degree : (q >= 2 ? q - 2 : 0); };
  bind(le, "lcc encode", [&](RunReport& r) { lcc_encode(r, g, q, m, deg(), poly_text); });
  bind(lr, "lcc correct", [&](RunReport& r) {
    if (word_path.empty() && !pos)
      lcc_correct(r, g, q, m, deg(), errors, trials, poly_text);
    else
      lcc_correct_word(r, g, q, m, deg(), errors, trials, poly_text, word_path, pos);
  });

  // addcomb
  auto* ac = group("addcomb", "sumsets, energy, BSG");
  auto* ae = leaf(ac, "energy", "additive energy of A and B");
  auto* ab = leaf(ac, "bsg", "constructive Balog-Szemeredi-Gowers");
  std::vector<std::string> set_paths;
  std::string graph_path;
  ae->add_option("--set", set_paths, "set JSON, given once (A = B) or twice")->expected(1, 2)
      ->check(CLI::ExistingFile);
  for (auto* s : {ae, ab}) {
    s->add_option("--a", a_path, "set JSON")->check(CLI::ExistingFile);
    s->add_option("--b", b_path, "set JSON (defaults to A)")->check(CLI::ExistingFile);
  }
  ab->add_option("--graph", graph_path, "JSON {a, b, edges}")->check(CLI::ExistingFile);
  ab->add_option("--edges", edges_path, "JSON list of index pairs (default: all)")->check(CLI::ExistingFile);
  ab->add_option("--k,--K", k_text, "energy parameter K")->capture_default_str();
  bind(ae, "addcomb energy", [&](RunReport& r) {
    if (!set_paths.empty()) {
      if (!a_path.empty() || !b_path.empty()) throw InputError("--set excludes --a and --b");
      addcomb_energy(r, set_paths.front(), set_paths.size() > 1 ? set_paths[1] : std::string());
    } else {
      if (a_path.empty()) throw InputError("give --set or --a");
      addcomb_energy(r, a_path, b_path);
    }
  });
  bind(ab, "addcomb bsg", [&](RunReport& r) {
    if (!graph_path.empty()) {
      if (!a_path.empty() || !b_path.empty() || !edges_path.empty())
        throw InputError("--graph excludes --a, --b and --edges");
      addcomb_bsg_graph(r, graph_path, k_text);
    } else {
      if (a_path.empty()) throw InputError("give --graph or --a");
      addcomb_bsg(r, a_path, b_path, edges_path, k_text);
    }
  });

  // incidence
  std::int64_t size = 3;
  auto* in = group("incidence", "points, lines, joints, distances");
  auto* ic = leaf(in, "count", "incidences and Cauchy-Schwarz bounds");
  ic->add_option("--points", points_path, "JSON points")->required()->check(CLI::ExistingFile);
  ic->add_option("--lines", lines_path, "JSON lines (default: spanned lines)")->check(CLI::ExistingFile);
  bind(ic, "incidence count", [&](RunReport& r) { incidence_count(r, points_path, lines_path); });
  auto* ig = leaf(in, "grid", "extremal grid");
  ig->add_option("--m,--M", size, "grid parameter")->required();
  bind(ig, "incidence grid", [&](RunReport& r) { incidence_grid(r, size); });
  auto* ij = leaf(in, "joints", "joints of the axis-parallel cube grid");
  ij->add_option("--n,--grid", size, "grid side")->required();
  bind(ij, "incidence joints", [&](RunReport& r) { incidence_joints(r, size); });
  auto* id = leaf(in, "distances", "distinct distances");
  id->add_option("--points", points_path, "JSON points")->required()->check(CLI::ExistingFile);
  bind(id, "incidence distances", [&](RunReport& r) { incidence_distances(r, points_path); });

  // sg
  auto* sg = group("sg", "Sylvester-Gallai configurations");
  auto* sc = leaf(sg, "check", "delta-SG check");
  sc->add_option("--config", config_path, "configuration JSON")->required()->check(CLI::ExistingFile);
  sc->add_option("--delta", delta_text, "fraction")->capture_default_str();
  bind(sc, "sg check", [&](RunReport& r) { sg_check(r, config_path, delta_text); });
  auto* sd = leaf(sg, "design", "design matrix and rank bound");
  sd->add_option("--config", config_path, "configuration JSON")->required()->check(CLI::ExistingFile);
  std::string design_delta;
  sd->add_option("--delta", design_delta, "fraction (default: largest that holds)");
  bind(sd, "sg design", [&](RunReport& r) { sg_design(r, config_path, design_delta); });

  // scale
  double eps = 1e-6, tol = 1e-10;
  std::uint64_t max_iters = 10'000'000;
  auto* scg = group("scale", "matrix scaling");
  auto* ss = leaf(scg, "sinkhorn", "alternating normalization");
  ss->add_option("--matrix", matrix_path, "CSV matrix")->required()->check(CLI::ExistingFile);
  ss->add_option("--eps", eps, "target violation")->capture_default_str();
  ss->add_option("--max-iters", max_iters, "sweep limit")->capture_default_str();
  bind(ss, "scale sinkhorn", [&](RunReport& r) { scale_sinkhorn(r, matrix_path, eps, max_iters); });
  auto* sp = leaf(scg, "potential", "gradient descent on the convex potential");
  sp->add_option("--matrix", matrix_path, "CSV matrix")->required()->check(CLI::ExistingFile);
  sp->add_option("--target", target_path, "JSON {rows, cols}")->check(CLI::ExistingFile);
  sp->add_option("--tol", tol, "gradient tolerance")->capture_default_str();
  bind(sp, "scale potential", [&](RunReport& r) { scale_potential(r, matrix_path, target_path, tol, 1'000'000); });

  // suite
  auto* su = group("suite", "test batteries");
  auto* sa = leaf(su, "acceptance", "run the acceptance criteria");
  sa->add_option("--filter", filter, "criterion number, module or key fragment");
  std::unique_ptr<RunReport> suite_report;
  bind(sa, "suite acceptance", [&](RunReport& r) {
    auto run = run_acceptance(g.seed, filter, &std::cerr);
    for (const auto& a : run.report.assertions()) r.check(a.name, a.passed, a.lhs, a.rhs, a.relation);
    for (const auto& [k, v] : run.report.outputs().items()) r.set_output(k, v);
    for (const auto& res : run.results)
      if (!res.within_budget) std::cerr << "criterion " << res.info.id << " exceeded its time budget\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunReport report(command, g.seed);
  std::string joined;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out") {
      ++i;
      continue;
    }
    joined += arg;
    joined += '\0';
  }
  report.add_input("argv", joined);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    action(report);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  report.set_wall_time_ms(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());

  const std::string text = g.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << g.out << "\n";
      return 2;
    }
    out << text;
  }
  return report.ok() ? 0 : 1;
}
