// Command line front end. Every subcommand reads documents in the text
// formats from textio.hpp and emits one JSON report on stdout; reports are
// byte-deterministic unless --timing is requested.

#include "superjac/superjac.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace superjac;

struct CommonOpts {
  std::string field_token;
  std::string out_path;
  bool quiet = false;
  bool timing = false;
};

void attach_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--field", opts.field_token,
                  "Field token (Q, Fp:<p>, Fq:<p>:<c0,c1,...>) used when a document header has none");
  cmd->add_option("--out", opts.out_path, "Also write the report to this file");
  cmd->add_flag("--quiet", opts.quiet, "Print only a one line result");
  cmd->add_flag("--timing", opts.timing, "Add elapsed milliseconds to the report (not deterministic)");
}

std::optional<FieldSpec> fallback_field(const CommonOpts& opts) {
  if (opts.field_token.empty()) return std::nullopt;
  return FieldSpec::from_token(opts.field_token);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_parse("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(Json report, const CommonOpts& opts, const std::string& quiet_line,
         std::chrono::steady_clock::time_point start) {
  if (opts.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    report["elapsedMs"] = ms;
  }
  std::string text = report.dump(2) + "\n";
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) fail_precondition("cannot write file '" + opts.out_path + "'");
    out << text;
  }
  if (opts.quiet) {
    std::cout << quiet_line << "\n";
  } else {
    std::cout << text;
  }
  return 0;
}

// Raw text output path for --smap style results.
int emit_raw(const std::string& text, const CommonOpts& opts) {
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) fail_precondition("cannot write file '" + opts.out_path + "'");
    out << text;
  }
  std::cout << text;
  return 0;
}

std::pair<bool, std::size_t> parse_var_name(const std::string& name) {
  bool odd = false;
  std::size_t digits = 0;
  if (name.size() >= 2 && name[0] == 'x') {
    digits = 1;
    if (name[1] == 'i') {
      odd = true;
      digits = 2;
    }
  }
  if (digits == 0 || digits >= name.size()) fail_parse("bad variable name '" + name + "'");
  std::size_t idx = 0;
  for (std::size_t i = digits; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
      fail_parse("bad variable name '" + name + "'");
    }
    idx = idx * 10 + static_cast<std::size_t>(name[i] - '0');
  }
  if (idx == 0) fail_parse("bad variable name '" + name + "'");
  return {odd, idx};
}

PointTuple parse_point(const std::string& text, const RingContext& ctx) {
  PointTuple b;
  if (ctx.even_vars == 0) {
    if (!text.empty()) fail_parse("point must be empty when m=0");
    return b;
  }
  std::size_t pos = 0;
  for (std::size_t i = 0; i < ctx.even_vars; ++i) {
    auto comma = text.find(',', pos);
    std::string piece = comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
    b.push_back(detail::parse_scalar_text(ctx.field, piece));
    if (comma == std::string::npos) {
      if (i + 1 != ctx.even_vars) fail_parse("point needs m=" + std::to_string(ctx.even_vars) + " coordinates");
      pos = text.size();
    } else {
      pos = comma + 1;
    }
  }
  if (pos < text.size()) fail_parse("too many point coordinates");
  return b;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact kernel for supercommutative polynomial superalgebras"};
  app.require_subcommand(1);
  auto start = std::chrono::steady_clock::now();

  // canon
  auto* canon = app.add_subcommand("canon", "Parse a polynomial document and print its canonical form");
  std::string canon_file;
  CommonOpts canon_opts;
  canon->add_option("file", canon_file, "Polynomial document")->required();
  attach_common(canon, canon_opts);

  // mul
  auto* mul = app.add_subcommand("mul", "Multiply two polynomial documents over the same ring");
  std::string mul_a, mul_b;
  CommonOpts mul_opts;
  mul->add_option("a", mul_a)->required();
  mul->add_option("b", mul_b)->required();
  attach_common(mul, mul_opts);

  // diff
  auto* diff = app.add_subcommand("diff", "Partial derivative of a polynomial document");
  std::string diff_file, diff_var;
  CommonOpts diff_opts;
  diff->add_option("file", diff_file)->required();
  diff->add_option("--var", diff_var, "Variable, e.g. x1 or xi2")->required();
  attach_common(diff, diff_opts);

  // jac
  auto* jac = app.add_subcommand("jac", "Jacobian blocks of a map document");
  std::string jac_file;
  CommonOpts jac_opts;
  jac->add_option("file", jac_file)->required();
  attach_common(jac, jac_opts);

  // check
  auto* check = app.add_subcommand("check", "Determinant-based invertibility check of a map document");
  std::string check_file;
  CommonOpts check_opts;
  check->add_option("file", check_file)->required();
  attach_common(check, check_opts);

  // tangent
  auto* tangent = app.add_subcommand("tangent", "Pointwise Jacobian invertibility at a given even point");
  std::string tangent_file, tangent_at;
  CommonOpts tangent_opts;
  tangent->add_option("file", tangent_file)->required();
  tangent->add_option("--at", tangent_at, "Comma separated coordinates")->required();
  attach_common(tangent, tangent_opts);

  // invert
  auto* invert = app.add_subcommand("invert", "Invert a map document or explain why it is not invertible");
  std::string invert_file;
  InvertOptions invert_options;
  CommonOpts invert_opts;
  invert->add_option("file", invert_file)->required();
  invert->add_option("--degree-bound", invert_options.degree_bound,
                     "Degree bound for the classical solve (0 picks the default)");
  invert->add_option("--ceiling", invert_options.degree_ceiling, "Clamp for the default degree bound");
  invert->add_option("--prefilter-ext", invert_options.prefilter_extension,
                     "Finite fields: scan points before inverting (1 base field, k>=2 lifts to degree k)");
  invert->add_option("--point-ceiling", invert_options.point_ceiling, "Point scan ceiling for the pre-filter");
  attach_common(invert, invert_opts);

  // compose
  auto* comp = app.add_subcommand("compose", "Compose two map documents (first applied after the second)");
  std::string comp_a, comp_b;
  bool comp_smap = false;
  CommonOpts comp_opts;
  comp->add_option("a", comp_a)->required();
  comp->add_option("b", comp_b)->required();
  comp->add_flag("--smap", comp_smap, "Print the composed map as a map document instead of JSON");
  attach_common(comp, comp_opts);

  // points
  auto* points = app.add_subcommand("points", "Bijectivity of the induced point map");
  std::string points_file, points_mode = "auto";
  std::uint64_t points_ceiling = 1000000, points_trials = 1000, points_seed = 0;
  CommonOpts points_opts;
  points->add_option("file", points_file)->required();
  points->add_option("--mode", points_mode, "auto, exhaustive or sample")
      ->check(CLI::IsMember({"auto", "exhaustive", "sample"}));
  points->add_option("--ceiling", points_ceiling, "Exhaustive scan ceiling");
  points->add_option("--trials", points_trials, "Sampling trials");
  points->add_option("--seed", points_seed, "Sampling seed");
  attach_common(points, points_opts);

  // random
  auto* random = app.add_subcommand("random", "Generate a seeded tame automorphism");
  std::size_t random_m = 0, random_n = 0;
  unsigned random_depth = 4, random_maxdeg = 3;
  std::uint64_t random_seed = 0;
  unsigned random_cap = 16;
  bool random_smap = false;
  CommonOpts random_opts;
  random->add_option("--m", random_m, "Even variable count")->required();
  random->add_option("--n", random_n, "Odd variable count")->required();
  random->add_option("--depth", random_depth, "Number of elementary layers");
  random->add_option("--max-degree", random_maxdeg, "Parameter degree bound");
  random->add_option("--seed", random_seed, "Seed");
  random->add_option("--degree-cap", random_cap, "Cap on the composed classical degree");
  random->add_flag("--smap", random_smap, "Print as a map document instead of JSON");
  attach_common(random, random_opts);

  // probe-upsilon
  auto* probe = app.add_subcommand("probe-upsilon", "Check the (n+1)-st power of a unipotent map");
  std::string probe_file;
  CommonOpts probe_opts;
  probe->add_option("file", probe_file)->required();
  attach_common(probe, probe_opts);

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the seeded property battery");
  unsigned selftest_trials = 200;
  std::uint64_t selftest_seed = 0;
  CommonOpts selftest_opts;
  selftest->add_option("--trials", selftest_trials, "Cases per suite");
  selftest->add_option("--seed", selftest_seed, "Seed");
  attach_common(selftest, selftest_opts);

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

  if (app.got_subcommand(canon)) {
    SuperPolynomial p = parse_poly_document(read_file(canon_file), fallback_field(canon_opts));
    Json report;
    report["command"] = "canon";
    report["ring"] = print_ring_header(p.context());
    report["canonical"] = print_poly(p);
    report["termCount"] = p.term_count();
    return emit(std::move(report), canon_opts, print_poly(p), start);
  }

  if (app.got_subcommand(mul)) {
    SuperPolynomial a = parse_poly_document(read_file(mul_a), fallback_field(mul_opts));
    SuperPolynomial b = parse_poly_document(read_file(mul_b), fallback_field(mul_opts));
    SuperPolynomial p = a * b;
    Json report;
    report["command"] = "mul";
    report["ring"] = print_ring_header(p.context());
    report["canonical"] = print_poly(p);
    report["termCount"] = p.term_count();
    return emit(std::move(report), mul_opts, print_poly(p), start);
  }

  if (app.got_subcommand(diff)) {
    SuperPolynomial p = parse_poly_document(read_file(diff_file), fallback_field(diff_opts));
    auto [odd, idx] = parse_var_name(diff_var);
    SuperPolynomial d = odd ? d_dxi(p, idx) : d_dx(p, idx);
    Json report;
    report["command"] = "diff";
    report["variable"] = diff_var;
    report["ring"] = print_ring_header(p.context());
    report["canonical"] = print_poly(d);
    return emit(std::move(report), diff_opts, print_poly(d), start);
  }

  if (app.got_subcommand(jac)) {
    SuperEndomorphism phi = parse_map_document(read_file(jac_file), fallback_field(jac_opts));
    JacobianPair jp = jacobian_pair(phi);
    auto block_json = [](const PolyMatrix& block) {
      Json rows = Json::array();
      for (const auto& row : block) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(print_poly(e));
        rows.push_back(std::move(r));
      }
      return rows;
    };
    Json report;
    report["command"] = "jac";
    report["ring"] = print_ring_header(phi.context());
    report["evenBlock"] = block_json(jp.even_block);
    report["oddBlock"] = block_json(jp.odd_block);
    return emit(std::move(report), jac_opts, "ok", start);
  }

  if (app.got_subcommand(check)) {
    SuperEndomorphism phi = parse_map_document(read_file(check_file), fallback_field(check_opts));
    SJVerdict v = check_sj(phi);
    Json report;
    report["command"] = "check";
    report["ring"] = print_ring_header(phi.context());
    report.update(sj_to_json(v));
    return emit(std::move(report), check_opts, v.pass ? "pass" : "fail", start);
  }

  if (app.got_subcommand(tangent)) {
    SuperEndomorphism phi = parse_map_document(read_file(tangent_file), fallback_field(tangent_opts));
    PointTuple at = parse_point(tangent_at, phi.context());
    bool ok = tangent_check(phi, at);
    Json report;
    report["command"] = "tangent";
    report["ring"] = print_ring_header(phi.context());
    report["at"] = point_to_json(at);
    report["invertible"] = ok;
    return emit(std::move(report), tangent_opts, ok ? "true" : "false", start);
  }

  if (app.got_subcommand(invert)) {
    SuperEndomorphism phi = parse_map_document(read_file(invert_file), fallback_field(invert_opts));
    InversionResult result = invert_full(phi, invert_options);
    Json report;
    report["command"] = "invert";
    report["ring"] = print_ring_header(phi.context());
    report.update(inversion_to_json(result));
    std::string line = "inconclusive";
    if (std::holds_alternative<Automorphism>(result)) {
      line = "automorphism";
    } else if (const auto* rej = std::get_if<NotAutomorphism>(&result)) {
      line = std::string("notAutomorphism:") + rejection_reason_name(rej->reason);
    }
    return emit(std::move(report), invert_opts, line, start);
  }

  if (app.got_subcommand(comp)) {
    SuperEndomorphism a = parse_map_document(read_file(comp_a), fallback_field(comp_opts));
    SuperEndomorphism b = parse_map_document(read_file(comp_b), fallback_field(comp_opts));
    SuperEndomorphism c = compose(a, b);
    if (comp_smap) return emit_raw(print_map_document(c), comp_opts);
    Json report;
    report["command"] = "compose";
    report["map"] = map_to_json(c);
    return emit(std::move(report), comp_opts, "ok", start);
  }

  if (app.got_subcommand(points)) {
    SuperEndomorphism phi = parse_map_document(read_file(points_file), fallback_field(points_opts));
    const RingContext& ctx = phi.context();
    std::string mode = points_mode;
    if (mode == "auto") {
      bool exhaustive_ok = ctx.field.is_finite();
      if (exhaustive_ok) {
        std::uint64_t q = ctx.field.element_count();
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < ctx.even_vars && exhaustive_ok; ++i) {
          if (count > points_ceiling / q) {
            exhaustive_ok = false;
          } else {
            count *= q;
          }
        }
        exhaustive_ok = exhaustive_ok && count <= points_ceiling;
      }
      mode = exhaustive_ok ? "exhaustive" : "sample";
    }
    Json report;
    report["command"] = "points";
    report["ring"] = print_ring_header(ctx);
    report["mode"] = mode;
    std::string line;
    if (mode == "exhaustive") {
      ExhaustiveResult r = exhaustive_bijectivity(phi, points_ceiling);
      report.update(exhaustive_to_json(r));
      line = report["verdict"].get<std::string>();
    } else {
      SampleResult r = sample_injectivity(phi, points_trials, points_seed);
      report.update(sample_to_json(r));
      line = report["verdict"].get<std::string>();
    }
    return emit(std::move(report), points_opts, line, start);
  }

  if (app.got_subcommand(random)) {
    if (random_opts.field_token.empty()) fail_precondition("random needs --field");
    FieldSpec field = FieldSpec::from_token(random_opts.field_token);
    RingContext ctx(random_m, random_n, field);
    TameOptions tame;
    tame.even_degree_cap = random_cap;
    SuperEndomorphism phi = random_tame(ctx, random_depth, random_maxdeg, random_seed, tame);
    if (random_smap) return emit_raw(print_map_document(phi), random_opts);
    Json report;
    report["command"] = "random";
    report["seed"] = random_seed;
    report["map"] = map_to_json(phi);
    return emit(std::move(report), random_opts, "ok", start);
  }

  if (app.got_subcommand(probe)) {
    SuperEndomorphism ups = parse_map_document(read_file(probe_file), fallback_field(probe_opts));
    UpsilonPowerReport r = probe_upsilon_power(ups);
    Json report;
    report["command"] = "probe-upsilon";
    report["ring"] = print_ring_header(ups.context());
    report.update(upsilon_report_to_json(r));
    return emit(std::move(report), probe_opts, r.holds ? "true" : "false", start);
  }

  if (app.got_subcommand(selftest)) {
    SelftestReport r = run_selftest(selftest_trials, selftest_seed);
    Json report;
    report["command"] = "selftest";
    report["trials"] = selftest_trials;
    report["seed"] = selftest_seed;
    report.update(selftest_to_json(r));
    int rc = emit(std::move(report), selftest_opts, r.all_pass ? "pass" : "fail", start);
    return r.all_pass ? rc : 4;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const superjac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case superjac::ErrorKind::parse:
        return 2;
      case superjac::ErrorKind::precondition:
        return 3;
      case superjac::ErrorKind::internal:
        return 4;
    }
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
