// Command-line surface: generation, detection, verification, bound
// certificates, and counting over the JSON interchange formats.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "jointslab/bounds.hpp"
#include "jointslab/pipeline.hpp"

namespace {

using namespace jointslab;

Field field_from_flag(const std::string& text) {
  if (text == "rational") return Field::rationals();
  if (text.rfind("prime:", 0) == 0) return Field::prime(std::stoll(text.substr(6)));
  throw Error("unknown field \"" + text + "\" (use rational or prime:P)");
}

Field default_field() {
  if (const char* env = std::getenv("JOINTSLAB_PRIME")) {
    return Field::prime(std::stoll(env));
  }
  return Field::prime(10007);
}

void emit_config(const AnyConfiguration& cfg, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << serialize_config(cfg);
  } else {
    write_config_file(out_path, cfg);
  }
}

std::string counts_summary(const AnyConfiguration& cfg) {
  std::ostringstream os;
  if (const auto* j = std::get_if<JointsConfiguration>(&cfg)) {
    os << "L=" << j->line_count() << " J=" << j->joint_count();
  } else if (const auto* m = std::get_if<MultijointsConfiguration>(&cfg)) {
    auto sizes = m->family_sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i) os << "L" << i + 1 << "=" << sizes[i] << " ";
    os << "J=" << m->joint_count();
  } else {
    const auto& f = std::get<FlatJointsConfiguration>(cfg);
    os << "L=" << f.line_count() << " F=" << f.flats.size() << " J=" << f.joint_count();
  }
  return os.str();
}

int cmd_generate(const std::string& kind, std::size_t k, std::size_t d, std::size_t m,
                 const std::string& field_flag, std::uint64_t seed,
                 const std::string& graph_path, const std::string& out_path) {
  Field field = field_flag.empty() ? default_field() : field_from_flag(field_flag);
  AnyConfiguration cfg = [&]() -> AnyConfiguration {
    if (kind == "joints") return generate_generic_hyperplane_config(k, d, field, seed);
    if (kind == "multijoints-k4") return generate_k4_blowup_multijoints(k, field, seed);
    if (kind == "flatjoints") return generate_flat_joints_config(k, d, m, field, seed);
    if (kind == "from-hypergraph" || kind == "from-colored-graph") {
      if (graph_path.empty()) throw Error("--graph is required for " + kind);
      AnyGraph g = read_graph_file(graph_path);
      if (kind == "from-hypergraph") {
        const auto& h = std::get<UniformHypergraph>(g);
        return generate_from_hypergraph(h.vertices, h.arity + 1, h.edges, field, seed);
      }
      const auto& cg = std::get<ColoredGraph>(g);
      return generate_from_colored_graph(cg.vertices, cg.color_edges, field, seed);
    }
    throw Error("unknown kind \"" + kind + "\"");
  }();
  emit_config(cfg, out_path);
  std::cerr << counts_summary(cfg) << "\n";
  return 0;
}

int cmd_detect(const std::string& in_path, const std::string& out_path) {
  AnyConfiguration cfg = read_config_file(in_path);
  AnyConfiguration detected = std::visit(
      [](const auto& c) -> AnyConfiguration {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, JointsConfiguration>) {
          return detect_joints(c.field, c.dim, c.lines);
        } else if constexpr (std::is_same_v<T, MultijointsConfiguration>) {
          std::vector<std::vector<Line>> families(c.dim);
          for (std::size_t i = 0; i < c.lines.size(); ++i) {
            families[c.line_family[i]].push_back(c.lines[i]);
          }
          return detect_multijoints(c.field, c.dim, families);
        } else {
          throw Error("joint detection applies to the joints and multijoints kinds");
        }
      },
      cfg);
  emit_config(detected, out_path);
  std::cerr << counts_summary(detected) << "\n";
  return 0;
}

int cmd_verify(const std::string& in_path, long n, const std::string& mode,
               const std::string& report_path) {
  AnyConfiguration cfg = read_config_file(in_path);
  VerifyOptions opts;
  opts.n = n;
  opts.mode = parse_mode(mode);
  RunReport report = verify_configuration(cfg, opts);
  std::cout << report_to_text(report);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw Error("cannot write " + report_path);
    out << report_to_json(report);
  }
  return report.all_pass() ? 0 : 1;
}

int cmd_check_bound(const std::string& in_path, const std::string& theorem,
                    std::optional<long> flag_j, const std::vector<long>& flag_l,
                    std::optional<long> flag_f, unsigned d, unsigned m) {
  mpz_class joints, flats;
  std::vector<mpz_class> lines;
  if (!in_path.empty()) {
    AnyConfiguration cfg = read_config_file(in_path);
    joints = config_joint_count(cfg);
    d = static_cast<unsigned>(config_dim(cfg));
    if (const auto* jc = std::get_if<JointsConfiguration>(&cfg)) {
      lines.emplace_back(jc->line_count());
    } else if (const auto* mc = std::get_if<MultijointsConfiguration>(&cfg)) {
      for (std::size_t s : mc->family_sizes()) lines.emplace_back(s);
    } else {
      const auto& fc = std::get<FlatJointsConfiguration>(cfg);
      lines.emplace_back(fc.line_count());
      flats = fc.flats.size();
      m = static_cast<unsigned>(fc.m);
    }
  } else {
    if (!flag_j) throw Error("provide --input or --J with --L");
    joints = *flag_j;
    for (long l : flag_l) lines.emplace_back(l);
    if (flag_f) flats = *flag_f;
  }

  BoundCertificate cert = [&] {
    if (theorem == "main") return certify_main_bound(joints, lines.at(0), d);
    if (theorem == "multijoints") return certify_multijoints_bound(joints, lines);
    if (theorem == "flats") return certify_flat_bound(joints, lines.at(0), flats, d, m);
    if (theorem == "conj34") {
      if (lines.size() == 1) lines.assign(3, lines[0]);
      return certify_rainbow_conjecture(joints, lines.at(0), lines.at(1), lines.at(2));
    }
    throw Error("unknown theorem \"" + theorem + "\" (main|multijoints|flats|conj34)");
  }();
  std::cout << theorem_name(cert.id) << ": " << cert.description << "\n"
            << (cert.holds ? "holds" : "VIOLATED") << ", tightness " << cert.tightness << "\n";
  return cert.holds ? 0 : 1;
}

int cmd_count(const std::string& in_path, bool rainbow, bool simplices, unsigned d) {
  AnyGraph g = read_graph_file(in_path);
  if (rainbow == simplices) throw Error("choose exactly one of --rainbow / --simplices");
  if (rainbow) {
    std::cout << count_rainbow_triangles(std::get<ColoredGraph>(g)).get_str() << "\n";
  } else {
    const auto& h = std::get<UniformHypergraph>(g);
    unsigned dim = d > 0 ? d : static_cast<unsigned>(h.arity + 1);
    std::cout << count_simplices(h, dim).get_str() << "\n";
  }
  return 0;
}

int cmd_report(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) throw Error("cannot open " + in_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  RunReport report = report_from_json(buf.str());
  std::cout << report_to_text(report);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact construction and verification of joints configurations"};
  app.require_subcommand(1);

  // generate
  std::string gen_kind = "joints", gen_field, gen_graph, gen_out;
  std::size_t gen_k = 4, gen_d = 3, gen_m = 2;
  std::uint64_t gen_seed = 0;
  auto* generate = app.add_subcommand("generate", "build an extremal configuration");
  generate->add_option("--kind", gen_kind,
                       "joints | multijoints-k4 | flatjoints | from-hypergraph | "
                       "from-colored-graph");
  generate->add_option("--k", gen_k, "hyperplane count (blow-up factor for multijoints-k4)");
  generate->add_option("--d", gen_d, "ambient dimension");
  generate->add_option("--m", gen_m, "lines per joint (flatjoints)");
  generate->add_option("--field", gen_field, "rational | prime:P (default prime:10007)");
  generate->add_option("--seed", gen_seed, "seed for degeneracy retries");
  generate->add_option("--graph", gen_graph, "graph/hypergraph JSON input");
  generate->add_option("-o,--output", gen_out, "output path (stdout when omitted)");

  // detect
  std::string det_in, det_out;
  auto* detect = app.add_subcommand("detect", "recompute the joints of a configuration");
  detect->add_option("--input", det_in, "configuration JSON")->required();
  detect->add_option("-o,--output", det_out, "output path (stdout when omitted)");

  // verify
  std::string ver_in, ver_mode = "all", ver_report;
  long ver_n = -1;
  auto* verify = app.add_subcommand("verify", "run the verification chain");
  verify->add_option("--input", ver_in, "configuration JSON")->required();
  verify->add_option("--n", ver_n, "target degree threshold (default 10x joints per line)");
  verify->add_option("--mode", ver_mode, "weights | orders | polymethod | all");
  verify->add_option("--report", ver_report, "write the JSON report here");

  // check-bound
  std::string chk_in, chk_theorem = "main";
  std::optional<long> chk_j;
  std::vector<long> chk_l;
  std::optional<long> chk_f;
  unsigned chk_d = 3, chk_m = 2;
  auto* check = app.add_subcommand("check-bound", "exact integer bound certificate");
  check->add_option("--input", chk_in, "configuration JSON (counts read from it)");
  check->add_option("--theorem", chk_theorem, "main | multijoints | flats | conj34");
  check->add_option("--J", chk_j, "joint count");
  check->add_option("--L", chk_l, "line count(s); repeat for families")->expected(-1);
  check->add_option("--F", chk_f, "flat count");
  check->add_option("--d", chk_d, "ambient dimension");
  check->add_option("--m", chk_m, "lines per joint (flats theorem)");

  // count
  std::string cnt_in;
  bool cnt_rainbow = false, cnt_simplices = false;
  unsigned cnt_d = 0;
  auto* count = app.add_subcommand("count", "exact graph/hypergraph counts");
  count->add_option("--input", cnt_in, "graph JSON")->required();
  count->add_flag("--rainbow", cnt_rainbow, "count rainbow triangles");
  count->add_flag("--simplices", cnt_simplices, "count simplices");
  count->add_option("--d", cnt_d, "simplex size (default arity + 1)");

  // report
  std::string rep_in;
  auto* report = app.add_subcommand("report", "render a JSON report as text");
  report->add_option("--input", rep_in, "report JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return cmd_generate(gen_kind, gen_k, gen_d, gen_m, gen_field, gen_seed, gen_graph,
                          gen_out);
    }
    if (detect->parsed()) return cmd_detect(det_in, det_out);
    if (verify->parsed()) return cmd_verify(ver_in, ver_n, ver_mode, ver_report);
    if (check->parsed()) {
      return cmd_check_bound(chk_in, chk_theorem, chk_j, chk_l, chk_f, chk_d, chk_m);
    }
    if (count->parsed()) return cmd_count(cnt_in, cnt_rainbow, cnt_simplices, cnt_d);
    if (report->parsed()) return cmd_report(rep_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
