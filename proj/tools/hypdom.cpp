// hypdom: command-line front end. Every command writes one JSON document
// ({"schema", "command", "group", "result"}) to stdout or --json PATH.
// Exit codes: 0 success, 1 parse/usage errors, 2 domain-level errors
// (including a failing selftest).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "hypdom/bisectors.hpp"
#include "hypdom/canreg.hpp"
#include "hypdom/decomposition.hpp"
#include "hypdom/domains.hpp"
#include "hypdom/io.hpp"
#include "hypdom/selftest.hpp"

using namespace hypdom;

namespace {

struct Job {
  std::string command;
  std::string input;
  std::string center;
  std::string matrix;
  std::string point;
  int max_length = 4;
  Tolerance tol;
  std::string json_path;
  std::string svg_path;
  std::string model = "auto";
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

void emit(const Job& job, const Json& doc) {
  const std::string text = dump(doc);
  if (job.json_path.empty())
    std::cout << text;
  else
    write_file(job.json_path, text);
}

Json document(const Job& job, const Json& group, const Json& result) {
  Json doc;
  doc["schema"] = std::string(kSchema);
  doc["command"] = job.command;
  doc["group"] = group;
  doc["result"] = result;
  return doc;
}

Json group_json(const GroupSpec& spec) {
  Json g;
  g["name"] = spec.name;
  g["model_dim"] = spec.model_dim;
  Json gens = Json::array();
  for (const auto& n : spec.generators) gens.push_back({{"name", n.name}, {"matrix", to_json(n.map)}});
  g["generators"] = gens;
  return g;
}

Json matrix_group(const MoebiusMap& g) { return {{"matrix", to_json(g)}}; }

bool is_real(const MoebiusMap& g) {
  for (Complex e : g.entries())
    if (std::abs(e.imag()) > 1e-12) return false;
  return true;
}

int dim_for(const Job& job, int fallback) {
  if (job.model == "h2") return 2;
  if (job.model == "h3") return 3;
  return fallback;
}

MoebiusMap require_matrix(const Job& job) {
  if (job.matrix.empty()) throw Error(ErrorCode::ParseError, "field --matrix: required for " + job.command);
  return parse_matrix(job.matrix, job.tol);
}

GroupSpec require_spec(const Job& job) {
  if (job.input.empty()) throw Error(ErrorCode::ParseError, "group spec file required for " + job.command);
  GroupSpec spec = load_group_spec(job.input, job.tol);
  const int dim = dim_for(job, spec.model_dim);
  if (dim == 2 && spec.model_dim == 3)
    for (const auto& g : spec.generators)
      if (!is_real(g.map)) throw Error(ErrorCode::InvalidArgument, "generator " + g.name + " is not real; cannot use h2");
  spec.model_dim = dim;
  return spec;
}

HalfPoint center_or_j(const Job& job) { return job.center.empty() ? HalfPoint::j() : parse_center(job.center); }

Json classify_json(const MoebiusMap& g, const Tolerance& tol) {
  Json out = to_json(classify(g, tol));
  out["trace"] = to_json(g.trace());
  return out;
}

int run_classify(const Job& job) {
  if (!job.matrix.empty()) {
    const MoebiusMap g = require_matrix(job);
    emit(job, document(job, matrix_group(g), classify_json(g, job.tol)));
    return 0;
  }
  const GroupSpec spec = require_spec(job);
  Json gens = Json::array();
  for (const auto& n : spec.generators) {
    Json e = classify_json(n.map, job.tol);
    e["name"] = n.name;
    gens.push_back(e);
  }
  emit(job, document(job, group_json(spec), {{"generators", gens}}));
  return 0;
}

int run_bisector(const Job& job) {
  const MoebiusMap g = require_matrix(job);
  const HalfPoint c = center_or_j(job);
  const int dim = dim_for(job, is_real(g) && c.z.imag() == 0.0 ? 2 : 3);
  GeneralizedSphere s = bisector_at_half(g, c, job.tol);
  s.dim = dim;
  Json result;
  result["center"] = to_json(c);
  result["model_dim"] = dim;
  result["bisector"] = to_json(s);
  result["ball_bisector"] = to_json(bisector_at(g, cayley(c), job.tol));
  emit(job, document(job, matrix_group(g), result));
  return 0;
}

int run_factor(const Job& job) {
  const MoebiusMap g = require_matrix(job);
  const IsometryFactorization f = factor(g, job.tol);
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) rows.push_back(Json::array({f.orthogonal(i, 0), f.orthogonal(i, 1), f.orthogonal(i, 2)}));
  const BoundaryValues bv = a_boundary(g, job.tol);
  Json result;
  result["orthogonal"] = rows;
  result["det"] = f.orthogonal.determinant();
  result["mirror"] = to_json(f.mirror);
  result["fit_residual"] = f.fit_residual;
  result["a_of_infinity"] = to_json(bv.image_of_infinity);
  result["a_of_zero"] = to_json(bv.image_of_zero);
  result["indeterminate"] = bv.indeterminate;
  emit(job, document(job, matrix_group(g), result));
  return 0;
}

void maybe_svg(const Job& job, const DomainApprox& d) {
  if (!job.svg_path.empty()) write_file(job.svg_path, render_svg(d));
}

int run_domain(const Job& job) {
  const GroupSpec spec = require_spec(job);
  DomainApprox d = dirichlet(spec, center_or_j(job), job.max_length, job.tol);
  const DfVerdict v = df_check(d, job.tol);
  if (v.is_df && spec.torsion_free) {
    try {
      cocompact_probe(d, v, *spec.torsion_free, job.tol);
    } catch (const Error& e) {
      d.notes.push_back(std::string("cocompact probe: ") + e.what());
    }
  }
  maybe_svg(job, d);
  emit(job, document(job, group_json(spec), to_json(d, &v)));
  return 0;
}

int run_ford(const Job& job) {
  const GroupSpec spec = require_spec(job);
  const DomainApprox d = ford(spec, job.max_length, job.tol);
  const DfVerdict v = df_check(d, job.tol);
  maybe_svg(job, d);
  emit(job, document(job, group_json(spec), to_json(d, &v)));
  return 0;
}

int run_df_check(const Job& job) {
  const GroupSpec spec = require_spec(job);
  const DomainApprox d = dirichlet(spec, center_or_j(job), job.max_length, job.tol);
  emit(job, document(job, group_json(spec), {{"verdict", to_json(df_check(d, job.tol))}}));
  return 0;
}

int run_canreg(const Job& job) {
  const MoebiusMap g = require_matrix(job);
  Json result;
  result["class"] = classify_json(g, job.tol);
  result["region"] = to_json(canreg_region(g, job.tol));
  if (!job.point.empty()) {
    const HalfPoint p = parse_center(job.point);
    result["point"] = to_json(p);
    result["contains"] = canreg_contains(g, p, job.tol);
    result["displacement"] = half_displacement(g, p);
  }
  emit(job, document(job, matrix_group(g), result));
  return 0;
}

int run_selftest(const Job& job) {
  const std::string dir = job.input.empty() ? default_fixture_dir() : job.input;
  const auto results = run_acceptance(dir, std::cerr);
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    list.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
  }
  // Timings vary between runs and stay out of the document.
  emit(job, document(job, nullptr, {{"pass", all}, {"criteria", list}}));
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet and Ford domains of Kleinian groups"};
  app.require_subcommand(1);
  Job job;

  auto common = [&](CLI::App* sub, bool spec, bool matrix) {
    if (spec) sub->add_option("input", job.input, "group spec JSON");
    if (matrix) sub->add_option("--matrix", job.matrix, "a, b, c, d as re,im,re,im,re,im,re,im");
    sub->add_option("--tol-alg", job.tol.alg, "algebraic tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-geo", job.tol.geo, "geometric tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--json", job.json_path, "write the JSON document here instead of stdout");
    sub->add_option("--model", job.model, "auto, h2 or h3")->check(CLI::IsMember({"auto", "h2", "h3"}));
  };
  auto domain_opts = [&](CLI::App* sub, bool center) {
    if (center) sub->add_option("--center", job.center, "a+bi, a+bi+cj or x,y,r");
    sub->add_option("--maxlen", job.max_length, "word length bound")->check(CLI::Range(1, 12));
    sub->add_option("--svg", job.svg_path, "write boundary traces as SVG");
  };

  auto* classify_cmd = app.add_subcommand("classify", "classify a matrix or each generator of a spec");
  common(classify_cmd, true, true);
  auto* bisector_cmd = app.add_subcommand("bisector", "bisector of a matrix about a center");
  common(bisector_cmd, false, true);
  bisector_cmd->add_option("--center", job.center, "a+bi, a+bi+cj or x,y,r (default j)");
  auto* factor_cmd = app.add_subcommand("factor", "orthogonal part and mirror of a ball isometry");
  common(factor_cmd, false, true);
  auto* domain_cmd = app.add_subcommand("domain", "Dirichlet domain approximation");
  common(domain_cmd, true, false);
  domain_opts(domain_cmd, true);
  auto* ford_cmd = app.add_subcommand("ford", "Ford domain approximation");
  common(ford_cmd, true, false);
  domain_opts(ford_cmd, false);
  auto* df_cmd = app.add_subcommand("df-check", "whether the Dirichlet domain is also a Ford domain");
  common(df_cmd, true, false);
  domain_opts(df_cmd, true);
  auto* canreg_cmd = app.add_subcommand("canreg", "canonical region of an element");
  common(canreg_cmd, false, true);
  canreg_cmd->add_option("--point", job.point, "also test this point");
  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance checks");
  selftest_cmd->add_option("fixtures", job.input, "fixture directory");
  selftest_cmd->add_option("--json", job.json_path, "write the JSON document here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  job.command = app.get_subcommands().front()->get_name();

  try {
    if (job.command == "classify") return run_classify(job);
    if (job.command == "bisector") return run_bisector(job);
    if (job.command == "factor") return run_factor(job);
    if (job.command == "domain") return run_domain(job);
    if (job.command == "ford") return run_ford(job);
    if (job.command == "df-check") return run_df_check(job);
    if (job.command == "canreg") return run_canreg(job);
    return run_selftest(job);
  } catch (const Error& e) {
    Json err;
    err["schema"] = std::string(kSchema);
    err["command"] = job.command;
    err["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    std::cerr << dump(err);
    const bool parse = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::DeterminantError;
    return parse ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "hypdom: " << e.what() << "\n";
    return 2;
  }
}
