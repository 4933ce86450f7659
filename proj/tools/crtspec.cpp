// crtspec: command-line front end for the crtspec library.
//
// Exit status: 0 success, 1 verification mismatch, 2 usage or input error.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crtspec/crtspec.hpp"

namespace {

using namespace crtspec;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct Globals {
  bool json = false;
  std::string out;
};

// Collected output, emitted to stdout or written atomically to --out.
class Sink {
 public:
  explicit Sink(const Globals& g) : g_(g) {}
  std::ostream& os() { return buf_; }
  void record(const json& j) { buf_ << j.dump() << "\n"; }
  void flush() {
    if (g_.out.empty())
      std::cout << buf_.str() << std::flush;
    else
      text::write_file_atomic(g_.out, buf_.str());
  }

 private:
  const Globals& g_;
  std::ostringstream buf_;
};

json log_json(const LogValue& v) { return v.is_zero() ? json("Z") : json(v.exponent()); }

std::uint64_t parse_u64(const std::string& s) {
  try {
    std::size_t pos = 0;
    auto v = std::stoull(s, &pos, 0);
    if (pos != s.size()) throw Error("");
    return v;
  } catch (const std::exception&) {
    throw Error("not an unsigned integer: '" + s + "'");
  }
}

// Degree -> modulus overrides from CRTSPEC_POLY_TABLE, if set.
const std::map<unsigned, Poly2>& poly_table() {
  static const std::map<unsigned, Poly2> table = [] {
    const char* path = std::getenv("CRTSPEC_POLY_TABLE");
    if (!path || !*path) return std::map<unsigned, Poly2>{};
    return text::parse_polynomial_table(text::read_file(path));
  }();
  return table;
}

FieldSpec table_field(unsigned m) {
  const auto& t = poly_table();
  auto it = t.find(m);
  return it == t.end() ? build_field(m) : build_field(m, it->second);
}

FieldSpec field_for_period(std::uint64_t N) { return table_field(multiplicative_order_of_2(N)); }

LfsrSpec parse_lfsr(const std::string& s) {
  auto colon = s.find(':');
  LfsrSpec l{Poly2::parse(s.substr(0, colon)), 1};
  if (colon != std::string::npos) l.seed = parse_u64(s.substr(colon + 1));
  return l;
}

BitSequence read_sequence(const std::string& path) {
  try {
    return text::parse_sequence(text::read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<LogSpectrumFactor> read_factors(const std::vector<std::string>& paths, std::vector<std::uint64_t>& moduli) {
  std::vector<LogSpectrumFactor> out;
  for (const auto& p : paths) {
    try {
      out.push_back(LogSpectrumFactor::from(text::parse_spectrum(text::read_file(p))));
    } catch (const ParseError& e) {
      throw Error(p + ": " + e.what());
    }
    moduli.push_back(out.back().modulus);
  }
  return out;
}

void emit_spectrum(Sink& sink, const Globals& g, const Spectrum& S, bool support_only) {
  if (!g.json) {
    sink.os() << text::format_spectrum(S, support_only);
    return;
  }
  sink.record({{"N", S.period()},
               {"field", S.field().to_string()},
               {"root_exponent", text::root_exponent(S)}});
  for (std::uint64_t k = 0; k < S.period(); ++k)
    if (!support_only || !S[k].is_zero()) sink.record({{"k", k}, {"value", log_json(S[k])}});
}

std::string sig3(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  double r = std::stod(os.str());
  std::ostringstream out;
  out << std::fixed << std::setprecision(r >= 100 || r == std::floor(r) ? 0 : r >= 10 ? 1 : 2) << r;
  return out.str();
}

// --- subcommands ---

int cmd_field_inspect(Sink& sink, const Globals& g, unsigned m, const std::string& mod, const std::string& elem) {
  FieldSpec f = mod.empty() ? table_field(m) : build_field(m, Poly2::parse(mod));
  std::ostringstream factors;
  for (auto p : factorize(f.group_order())) factors << (factors.tellp() ? " * " : "") << p;
  json j{{"field", f.to_string()},
         {"generator", Poly2(f.generator().bits()).to_hex()},
         {"group_order", f.group_order()},
         {"group_order_factors", factorize(f.group_order())},
         {"primitive_modulus", is_primitive_polynomial(f.modulus())}};
  if (!elem.empty()) {
    FieldElement a = f.element(parse_u64(elem));
    j["element"] = Poly2(a.bits()).to_hex();
    j["is_zero"] = a.is_zero();
    if (!a.is_zero()) {
      j["order"] = element_order(a);
      j["minimal_polynomial"] = minimal_polynomial_of(a).to_hex();
      j["log"] = discrete_log(a, f.generator());
    }
  }
  if (g.json) {
    sink.record(j);
    return kOk;
  }
  auto& os = sink.os();
  os << f.to_string() << "\n";
  os << "modulus: " << f.modulus().to_string() << (j["primitive_modulus"].get<bool>() ? " (primitive)" : "") << "\n";
  os << "generator: " << j["generator"].get<std::string>() << "\n";
  os << "group order: " << f.group_order() << " = " << factors.str() << "\n";
  if (!elem.empty()) {
    if (j["is_zero"].get<bool>()) {
      os << "element 0x0: zero\n";
    } else {
      FieldElement a = f.element(parse_u64(elem));
      os << "element " << j["element"].get<std::string>() << ": order " << j["order"].get<std::uint64_t>()
         << ", minimal polynomial " << minimal_polynomial_of(a).to_string() << ", g^"
         << j["log"].get<std::uint64_t>() << "\n";
    }
  }
  return kOk;
}

int cmd_seq_gen(Sink& sink, const Globals& g, const std::string& poly, const std::string& seed, std::size_t nbits) {
  Lfsr l(Poly2::parse(poly), parse_u64(seed));
  if (nbits > 0) {
    BitSequence prefix(lfsr_stream(l, nbits));
    if (g.json)
      sink.record({{"bits", prefix.to_string()}, {"length", nbits}});
    else
      sink.os() << prefix.to_string() << "\n";
    return kOk;
  }
  BitSequence s = lfsr_sequence(l);
  if (g.json)
    sink.record({{"period", s.period()}, {"bits", s.to_string()}});
  else
    sink.os() << text::format_sequence(s);
  return kOk;
}

int emit_sequence(Sink& sink, const Globals& g, const BitSequence& s) {
  if (g.json)
    sink.record({{"period", s.period()}, {"bits", s.to_string()}});
  else
    sink.os() << text::format_sequence(s);
  return kOk;
}

int cmd_seq_product(Sink& sink, const Globals& g, const std::vector<std::string>& in) {
  BitSequence s = read_sequence(in.at(0));
  for (std::size_t i = 1; i < in.size(); ++i) s = pointwise_product(s, read_sequence(in[i]));
  return emit_sequence(sink, g, s);
}

int cmd_seq_combine(Sink& sink, const Globals& g, const std::string& anf, const std::vector<std::string>& in) {
  std::vector<BitSequence> inputs;
  for (const auto& p : in) inputs.push_back(read_sequence(p));
  return emit_sequence(sink, g, combiner_stream(AnfCombiner::parse(anf, inputs.size()), inputs));
}

int cmd_bm(Sink& sink, const Globals& g, const std::string& in, const std::string& raw, std::size_t periods) {
  BmResult r;
  std::size_t n = 0;
  if (!raw.empty()) {
    auto content = text::read_file(raw);
    while (!content.empty() && std::isspace(static_cast<unsigned char>(content.back()))) content.pop_back();
    BitSequence bits = BitSequence::parse(content);
    n = bits.period();
    r = berlekamp_massey(bits.bits());
  } else {
    BitSequence s = read_sequence(in);
    n = s.period() * periods;
    r = berlekamp_massey(s, periods);
  }
  if (g.json) {
    sink.record({{"L", r.linear_complexity},
                 {"bits", n},
                 {"minimal_polynomial", r.minimal_poly.to_hex()},
                 {"minimal_polynomial_text", r.minimal_poly.to_string()},
                 {"connection", r.connection.to_hex()}});
    return kOk;
  }
  sink.os() << "L=" << r.linear_complexity << "\n"
            << "g=" << r.minimal_poly.to_hex() << "\n"
            << "g(x)=" << r.minimal_poly.to_string() << "\n";
  return kOk;
}

int cmd_dft(Sink& sink, const Globals& g, const std::string& in, const std::string& field_line,
            std::optional<std::uint64_t> point, bool reduce, bool support_only) {
  BitSequence s = read_sequence(in);
  FieldSpec f = field_line.empty() ? field_for_period(s.period()) : text::parse_field_line(field_line);
  if (f.group_order() % s.period() != 0)
    throw Error(f.to_string() + " has no element of order " + std::to_string(s.period()));
  FieldElement root = element_of_order(f, s.period());
  if (point) {
    if (*point >= s.period()) throw Error("--point outside [0, " + std::to_string(s.period()) + ")");
    LogValue v = dft_point(s, root, *point);
    if (g.json)
      sink.record({{"k", *point}, {"value", log_json(v)}});
    else
      sink.os() << *point << " " << v.to_string() << "\n";
    return kOk;
  }
  Spectrum S = dft(s, root);
  if (reduce) {
    auto leaders = coset_reduce(S);
    if (!g.json) sink.os() << text::spectrum_header(S) << "\n";
    for (const auto& [k, v] : leaders) {
      if (g.json)
        sink.record({{"leader", k}, {"value", log_json(v)}});
      else
        sink.os() << k << " " << v.to_string() << "\n";
    }
    return kOk;
  }
  emit_spectrum(sink, g, S, support_only);
  return kOk;
}

int cmd_crt_conv(Sink& sink, const Globals& g, const std::vector<std::string>& files,
                 std::optional<std::uint64_t> point, bool support_only) {
  std::vector<std::uint64_t> moduli;
  auto factors = read_factors(files, moduli);
  CrtBasis basis(moduli);
  if (point) {
    LogValue v = product_spectrum_point(factors, basis, *point);
    if (g.json)
      sink.record({{"k", *point}, {"value", log_json(v)}, {"N", basis.N()}});
    else
      sink.os() << *point << " " << v.to_string() << "\n";
    return kOk;
  }
  emit_spectrum(sink, g, product_spectrum(factors, basis, field_for_period(basis.N())), support_only);
  return kOk;
}

int cmd_combine_spectrum(Sink& sink, const Globals& g, const std::string& anf, const std::vector<std::string>& files,
                         bool support_only) {
  std::vector<std::uint64_t> moduli;
  auto factors = read_factors(files, moduli);
  CrtBasis basis(moduli);
  auto f = AnfCombiner::parse(anf, factors.size());
  emit_spectrum(sink, g, combiner_spectrum(f, factors, basis, field_for_period(basis.N())), support_only);
  return kOk;
}

void emit_mismatches(Sink& sink, const std::vector<Mismatch>& ms, const std::string& source) {
  for (const auto& m : ms)
    sink.record({{"source", source}, {"k", m.index}, {"expected", log_json(m.expected)}, {"actual", log_json(m.actual)}});
}

int cmd_verify_theorem1(Sink& sink, const Globals& g, const std::vector<std::string>& lfsrs,
                        const std::string& expect, std::uint64_t max_period) {
  std::vector<LfsrSpec> specs;
  for (const auto& s : lfsrs) specs.push_back(parse_lfsr(s));
  Theorem1Options opts;
  opts.max_period = max_period;
  if (!expect.empty()) opts.expected = text::parse_spectrum(text::read_file(expect));
  Theorem1Report rep = verify_theorem1(specs, opts);
  if (g.json) {
    sink.record({{"periods", rep.periods},
                 {"N", rep.N},
                 {"crt_support", rep.crt_support},
                 {"oracle_support", rep.oracle_support},
                 {"linear_complexity", rep.linear_complexity},
                 {"blahut", rep.blahut_ok},
                 {"conjugacy", rep.conjugacy_ok},
                 {"support_product", rep.support_product_ok},
                 {"mismatches", rep.mismatches.size() + rep.expected_mismatches.size()},
                 {"result", rep.passed() ? "PASS" : "FAIL"}});
  } else {
    auto& os = sink.os();
    os << "periods:";
    for (auto p : rep.periods) os << " " << p;
    os << "  N=" << rep.N << "\n";
    os << "nonzero points: crt " << rep.crt_support << ", oracle " << rep.oracle_support << "\n";
    os << "linear complexity: " << rep.linear_complexity << "\n";
    os << "blahut: " << (rep.blahut_ok ? "ok" : "FAIL") << "\n";
    os << "conjugacy: " << (rep.conjugacy_ok ? "ok" : "FAIL") << "\n";
    os << "support product: " << (rep.support_product_ok ? "ok" : "FAIL") << "\n";
    os << "mismatches vs oracle: " << rep.mismatches.size() << "\n";
    if (opts.expected) os << "mismatches vs " << expect << ": " << rep.expected_mismatches.size() << "\n";
    os << (rep.passed() ? "PASS" : "FAIL") << " " << rep.crt_support << "/" << rep.oracle_support << " points\n";
  }
  emit_mismatches(sink, rep.mismatches, "oracle");
  emit_mismatches(sink, rep.expected_mismatches, "expect");
  return rep.passed() ? kOk : kMismatch;
}

int cmd_verify_compare(Sink& sink, const Globals& g, const std::string& expected, const std::string& actual) {
  auto ms = compare_spectra(text::parse_spectrum(text::read_file(expected)), text::parse_spectrum(text::read_file(actual)));
  if (!g.json) sink.os() << (ms.empty() ? "PASS" : "FAIL") << " " << ms.size() << " mismatches\n";
  emit_mismatches(sink, ms, "compare");
  return ms.empty() ? kOk : kMismatch;
}

int cmd_verify_random(Sink& sink, const Globals& g, std::uint64_t seed, std::size_t count, std::uint64_t max_period) {
  std::mt19937_64 rng(seed);
  // Degrees whose maximal periods 3, 7, 31, 127 are pairwise coprime.
  const std::vector<unsigned> degrees{2, 3, 5, 7};
  std::map<unsigned, std::vector<Poly2>> prims;
  for (auto d : degrees) prims[d] = primitive_polynomials(d);
  std::size_t failures = 0;
  if (!g.json) sink.os() << "seed " << seed << "\n";
  for (std::size_t trial = 0; trial < count; ++trial) {
    std::vector<unsigned> pick;
    std::uint64_t N = 1;
    std::vector<unsigned> pool = degrees;
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t want = 2 + rng() % 2;
    for (auto d : pool) {
      const std::uint64_t p = (std::uint64_t{1} << d) - 1;
      if (pick.size() < want && N * p <= max_period && multiplicative_order_of_2(N * p) <= kMaxFieldDegree) {
        pick.push_back(d);
        N *= p;
      }
    }
    std::vector<LfsrSpec> specs;
    std::string desc;
    for (auto d : pick) {
      const auto& ps = prims[d];
      LfsrSpec l{ps[rng() % ps.size()], 1 + rng() % ((std::uint64_t{1} << d) - 1)};
      desc += (desc.empty() ? "" : " ") + l.connection.to_hex() + ":" + Poly2(l.seed).to_hex();
      specs.push_back(l);
    }
    auto rep = verify_theorem1(specs, {max_period, std::nullopt});
    if (!rep.passed()) ++failures;
    if (g.json)
      sink.record({{"trial", trial}, {"lfsrs", desc}, {"N", rep.N}, {"result", rep.passed() ? "PASS" : "FAIL"}});
    else
      sink.os() << (rep.passed() ? "PASS" : "FAIL") << " " << desc << " N=" << rep.N << " points=" << rep.crt_support
                << "\n";
  }
  if (!g.json) sink.os() << (count - failures) << "/" << count << " passed (seed " << seed << ")\n";
  return failures == 0 ? kOk : kMismatch;
}

int cmd_bench(Sink& sink, const Globals& g, const std::string& name) {
  std::smatch m;
  static const std::regex re("^([abc]{1,3})([0-9]+)$");
  if (!std::regex_match(name, m, re)) throw Error("bench: case must look like bc108 (registers a/b/c, then an index)");
  const std::string regs = m[1];
  const std::uint64_t k = parse_u64(m[2]);
  std::vector<BitSequence> streams;
  std::vector<FieldElement> roots;
  std::vector<std::uint64_t> periods;
  std::vector<unsigned> degs;
  for (char r : regs) {
    auto f = example_factor(r);
    streams.push_back(f.stream);
    roots.push_back(f.spectrum.root());
    periods.push_back(f.stream.period());
    degs.push_back(f.spectrum.field().m());
  }
  CrtBasis basis(periods);
  if (k >= basis.N()) throw Error("bench: index outside [0, " + std::to_string(basis.N()) + ")");
  const unsigned n = multiplicative_order_of_2(basis.N());
  const double direct_est = estimate_direct(basis.N(), n);
  const CrtEstimate crt_est = estimate_crt(periods, degs, basis.N());
  const PointPaths paths = measure_point_paths(streams, roots, k);

  std::string crt_field, crt_bits, crt_terms;
  for (std::size_t i = 0; i < degs.size(); ++i) {
    crt_field += (i ? ", " : "") + std::string("GF(2^") + std::to_string(degs[i]) + ")";
    crt_bits += (i ? " + " : "") + std::to_string(degs[i]);
    crt_terms += (i ? " + " : "") + sig3(crt_est.factor_costs[i]);
  }
  crt_bits += " = " + std::to_string(std::accumulate(degs.begin(), degs.end(), 0u));
  crt_terms += " + " + sig3(crt_est.crt_step) + " = " + sig3(crt_est.total);
  const auto direct_field_ops = paths.direct.field_ops();
  const auto crt_field_ops = paths.crt.field_ops();

  if (g.json) {
    sink.record({{"case", name},
                 {"N", basis.N()},
                 {"k", k},
                 {"direct", {{"bits", n},
                             {"field", "GF(2^" + std::to_string(n) + ")"},
                             {"estimated_ops", direct_est},
                             {"mul_count", paths.direct.mul_count},
                             {"field_ops", direct_field_ops},
                             {"value", log_json(paths.direct_value)}}},
                 {"crt", {{"bits", crt_est.bits_required},
                          {"field", crt_field},
                          {"estimated_ops", crt_est.total},
                          {"factor_costs", crt_est.factor_costs},
                          {"crt_step", crt_est.crt_step},
                          {"mul_count", paths.crt.mul_count},
                          {"field_ops", crt_field_ops},
                          {"integer_ops", paths.crt.integer_ops},
                          {"value", log_json(paths.crt_value)}}},
                 {"eta_floored", crt_est.floored}});
    return paths.direct_value == paths.crt_value ? kOk : kMismatch;
  }
  auto& os = sink.os();
  std::string label = regs;
  for (auto& c : label) c = static_cast<char>(std::toupper(c));
  os << "# " << label << "_" << k << ", N = " << basis.N() << "\n\n";
  os << markdown_table({"", "Direct", "CRT"},
                       {{"Bits required", std::to_string(n), crt_bits},
                        {"Field", "GF(2^" + std::to_string(n) + ")", crt_field},
                        {"Estimated XOR ops", sig3(direct_est), crt_terms},
                        {"Measured field multiplications", std::to_string(paths.direct.mul_count),
                         std::to_string(paths.crt.mul_count)},
                        {"Measured field ops", std::to_string(direct_field_ops), std::to_string(crt_field_ops)},
                        {"Value", format_log_value(paths.direct_value), format_log_value(paths.crt_value)}});
  os << "\n";
  const std::uint64_t sum_bits = std::accumulate(degs.begin(), degs.end(), 0u);
  os << "- sum of factor degrees " << sum_bits << (sum_bits < n ? " < " : " >= ") << n << " (direct field degree)\n";
  if (crt_est.floored) os << "- eta argument floored at 3 for degree-2 factors\n";
  os << "- CRT reconstruction integer ops: " << paths.crt.integer_ops << "\n\n";
  os << "metric,direct,crt\n";
  os << "bits_required," << n << "," << sum_bits << "\n";
  os << "estimated_ops," << sig3(direct_est) << "," << sig3(crt_est.total) << "\n";
  os << "measured_mul," << paths.direct.mul_count << "," << paths.crt.mul_count << "\n";
  os << "measured_field_ops," << direct_field_ops << "," << crt_field_ops << "\n";
  return paths.direct_value == paths.crt_value ? kOk : kMismatch;
}

int cmd_report(Sink& sink, const Globals& g, int example) {
  if (!g.json) {
    sink.os() << report_tables(example);
    return kOk;
  }
  // One record per nonzero point of each reproduced spectrum.
  auto emit = [&](const std::string& table, const Spectrum& S) {
    for (auto k : S.support()) sink.record({{"table", table}, {"k", k}, {"value", log_json(S[k])}});
  };
  auto a = example_factor('a'), b = example_factor('b'), c = example_factor('c');
  if (example == 1) {
    std::vector<LogSpectrumFactor> fs{a.factor, b.factor};
    emit("U", product_spectrum(fs, CrtBasis({3, 7})));
  } else if (example == 2) {
    std::vector<LogSpectrumFactor> fbc{b.factor, c.factor}, fac{a.factor, c.factor}, fabc{a.factor, b.factor, c.factor};
    emit("C", c.spectrum);
    emit("BC", product_spectrum(fbc, CrtBasis({7, 31})));
    emit("AC", product_spectrum(fac, CrtBasis({3, 31})));
    emit("S", product_spectrum(fabc, CrtBasis({3, 7, 31})));
    emit("F", combiner_spectrum(AnfCombiner::parse("1*2+2*3+1*3"), fabc, CrtBasis({3, 7, 31})));
  } else {
    throw Error("report: no example " + std::to_string(example));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of periodic binary sequences over GF(2^n), computed directly and through CRT"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON lines instead of text");
  app.add_option("--out", g.out, "Write output to this file (atomically)");

  std::function<int(Sink&)> action;
  auto set = [&](CLI::App* sub, std::function<int(Sink&)> fn) { sub->callback([&action, fn] { action = fn; }); };

  // field
  auto* field = app.add_subcommand("field", "Field inspection")->require_subcommand(1);
  auto* field_inspect = field->add_subcommand("inspect", "Describe GF(2^m) and optionally one element");
  unsigned fi_m = 0;
  std::string fi_mod, fi_elem;
  field_inspect->add_option("--m", fi_m, "Extension degree")->required()->check(CLI::Range(1u, kMaxFieldDegree));
  field_inspect->add_option("--mod", fi_mod, "Modulus (hex or x^a + ... form); default from the table");
  field_inspect->add_option("--element", fi_elem, "Element coordinates (hex)");
  set(field_inspect, [&](Sink& s) { return cmd_field_inspect(s, g, fi_m, fi_mod, fi_elem); });

  // seq
  auto* seq = app.add_subcommand("seq", "Sequence generation and combination")->require_subcommand(1);
  auto* seq_gen = seq->add_subcommand("gen", "LFSR output: one full period, or a raw prefix with --bits");
  std::string sg_poly, sg_seed = "0x1";
  std::size_t sg_bits = 0;
  seq_gen->add_option("--poly", sg_poly, "Connection polynomial")->required();
  seq_gen->add_option("--seed", sg_seed, "Seed; its m binary digits, MSB first, are the first outputs");
  seq_gen->add_option("--bits", sg_bits, "Emit this many raw output bits instead of a sequence file");
  set(seq_gen, [&](Sink& s) { return cmd_seq_gen(s, g, sg_poly, sg_seed, sg_bits); });

  auto* seq_product = seq->add_subcommand("product", "Bitwise AND of sequence files");
  std::vector<std::string> sp_in;
  seq_product->add_option("--in", sp_in, "Sequence files")->required()->check(CLI::ExistingFile);
  set(seq_product, [&](Sink& s) { return cmd_seq_product(s, g, sp_in); });

  auto* seq_combine = seq->add_subcommand("combine", "Apply an ANF Boolean function to sequence files");
  std::string sc_anf;
  std::vector<std::string> sc_in;
  seq_combine->add_option("--anf", sc_anf, "e.g. 1*2+2*3+1*3")->required();
  seq_combine->add_option("--in", sc_in, "Sequence files, variable 1 first")->required()->check(CLI::ExistingFile);
  set(seq_combine, [&](Sink& s) { return cmd_seq_combine(s, g, sc_anf, sc_in); });

  // bm
  auto* bm = app.add_subcommand("bm", "Berlekamp-Massey linear complexity");
  std::string bm_in, bm_raw;
  std::size_t bm_periods = 2;
  auto* bm_in_opt = bm->add_option("--in", bm_in, "Sequence file")->check(CLI::ExistingFile);
  auto* bm_raw_opt = bm->add_option("--raw", bm_raw, "File holding a raw bit string")->check(CLI::ExistingFile);
  bm_in_opt->excludes(bm_raw_opt);
  bm->add_option("--periods", bm_periods, "Periods fed to BM")->check(CLI::PositiveNumber);
  bm->callback([&] {
    if (bm_in.empty() && bm_raw.empty()) throw CLI::RequiredError("--in or --raw");
    action = [&](Sink& s) { return cmd_bm(s, g, bm_in, bm_raw, bm_periods); };
  });

  // dft
  auto* dftc = app.add_subcommand("dft", "Spectrum of a sequence file");
  std::string dft_in, dft_field;
  std::optional<std::uint64_t> dft_point;
  bool dft_reduce = false, dft_support = false;
  dftc->add_option("--in", dft_in, "Sequence file")->required()->check(CLI::ExistingFile);
  dftc->add_option("--field", dft_field, "Field line, e.g. \"GF2m m=6 mod=0x43\"");
  dftc->add_option("--point", dft_point, "Only this index");
  dftc->add_flag("--reduce", dft_reduce, "Print coset leaders only");
  dftc->add_flag("--support-only", dft_support, "Omit zero entries");
  set(dftc, [&](Sink& s) { return cmd_dft(s, g, dft_in, dft_field, dft_point, dft_reduce, dft_support); });

  // crt-conv
  auto* crt = app.add_subcommand("crt-conv", "Spectrum of a product from factor spectra");
  std::vector<std::string> crt_files;
  std::optional<std::uint64_t> crt_point;
  bool crt_support = false;
  crt->add_option("--factors", crt_files, "Factor spectrum files")->required()->check(CLI::ExistingFile);
  crt->add_option("--point", crt_point, "Only this index");
  crt->add_flag("--support-only", crt_support, "Omit zero entries");
  set(crt, [&](Sink& s) { return cmd_crt_conv(s, g, crt_files, crt_point, crt_support); });

  // combine-spectrum
  auto* comb = app.add_subcommand("combine-spectrum", "Spectrum of a combiner output from factor spectra");
  std::string cs_anf;
  std::vector<std::string> cs_files;
  bool cs_support = false;
  comb->add_option("--anf", cs_anf, "e.g. 1*2+2*3+1*3")->required();
  comb->add_option("--factors", cs_files, "Factor spectrum files, variable 1 first")->required()->check(CLI::ExistingFile);
  comb->add_flag("--support-only", cs_support, "Omit zero entries");
  set(comb, [&](Sink& s) { return cmd_combine_spectrum(s, g, cs_anf, cs_files, cs_support); });

  // verify
  auto* verify = app.add_subcommand("verify", "Cross-check CRT results against brute force")->require_subcommand(1);
  auto* v_t1 = verify->add_subcommand("theorem1", "CRT spectrum of an LFSR product vs direct DFT");
  std::vector<std::string> vt_lfsr;
  std::string vt_expect;
  std::uint64_t vt_max = 100000;
  v_t1->add_option("--lfsr", vt_lfsr, "poly:seed, e.g. 0x7:0x1")->required();
  v_t1->add_option("--expect", vt_expect, "Spectrum file the CRT result must also equal")->check(CLI::ExistingFile);
  v_t1->add_option("--max-period", vt_max, "Bound on the product period");
  set(v_t1, [&](Sink& s) { return cmd_verify_theorem1(s, g, vt_lfsr, vt_expect, vt_max); });

  auto* v_cmp = verify->add_subcommand("compare", "Index-wise comparison of two spectrum files");
  std::string vc_exp, vc_act;
  v_cmp->add_option("--expected", vc_exp, "Spectrum file")->required()->check(CLI::ExistingFile);
  v_cmp->add_option("--actual", vc_act, "Spectrum file")->required()->check(CLI::ExistingFile);
  set(v_cmp, [&](Sink& s) { return cmd_verify_compare(s, g, vc_exp, vc_act); });

  auto* v_rand = verify->add_subcommand("random", "Randomized theorem1 trials over primitive registers");
  std::uint64_t vr_seed = 1;
  std::size_t vr_count = 20;
  std::uint64_t vr_max = 5000;
  v_rand->add_option("--seed", vr_seed, "RNG seed (printed for replay)");
  v_rand->add_option("--count", vr_count, "Number of trials");
  v_rand->add_option("--max-period", vr_max, "Bound on the product period");
  set(v_rand, [&](Sink& s) { return cmd_verify_random(s, g, vr_seed, vr_count, vr_max); });

  // bench
  auto* bench = app.add_subcommand("bench", "Direct vs CRT cost for one spectral point");
  std::string bench_case = "bc108";
  bench->add_option("--case", bench_case, "Registers and index, e.g. bc108");
  set(bench, [&](Sink& s) { return cmd_bench(s, g, bench_case); });

  // report
  auto* report = app.add_subcommand("report", "Reproduce the worked-example tables");
  int report_example = 1;
  report->add_option("--example", report_example, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  set(report, [&](Sink& s) { return cmd_report(s, g, report_example); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Sink sink(g);
    int rc = action(sink);
    sink.flush();
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
