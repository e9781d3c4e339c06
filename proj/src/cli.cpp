#include "linepack/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "linepack/chartab.hpp"
#include "linepack/etf.hpp"
#include "linepack/io.hpp"
#include "linepack/scheme.hpp"
#include "linepack/search.hpp"

namespace linepack::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kFormatVersion = "LINEPACK-MATRIX v1";
constexpr std::uint64_t kDefaultSeed = 20240601;
constexpr std::uint64_t kDefaultSamples = 100000;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  unsigned threads = 0;
  bool json_errors = false;
};

void report_error(const Common& common, std::ostream& err, int code, const std::string& kind,
                  const std::string& message) {
  if (common.json_errors)
    err << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump() << '\n';
  else
    err << "error: " << message << '\n';
}

void check_n(int n, int max_n) {
  if (n % 2 == 0) throw UsageError("n must be odd");
  if (n < 3 || n > max_n) throw UsageError("n must satisfy 3 <= n <= " + std::to_string(max_n));
}

fs::path output_dir(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "linepack-out";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string element_string(const bgroup::GroupElement& g) {
  return "(" + std::to_string(g.x.bits) + "," + std::to_string(g.y.bits) + ")";
}

json construction_json(const etf::Construction& c) {
  const auto w = etf::welch_bound_sq(c.m(), c.num_vectors());
  return {{"n", c.n()},
          {"k", c.k()},
          {"modulus", c.field().modulus()},
          {"m", c.m()},
          {"numVectors", c.num_vectors()},
          {"welch_sq", to_string(w.parseval)},
          {"ordering", "lex-xy"},
          {"d_order", "gamma-asc"}};
}

/// Frame certificate plus agreement of the three Gram evaluations.
struct FullRun {
  etf::ScaledFrame frame;
  QiMatrix gram;
  etf::EtfCertificate cert;
};

FullRun full_run(const etf::Construction& c, unsigned threads) {
  FullRun r;
  r.frame = etf::synthesize_frame(c, threads);
  r.cert = etf::verify_frame(r.frame, threads);
  r.gram = etf::gram_from_frame(r.frame, threads);
  const auto by_chars = etf::compare_grams(c.group(), r.gram, etf::gram_character(c, threads));
  const auto by_formula = etf::compare_grams(c.group(), r.gram, etf::gram_closed_form_matrix(c, threads));
  r.cert.provenance = {etf::Provenance::frame, etf::Provenance::character_sum, etf::Provenance::closed_form};
  r.cert.agreement = {{"frame=characterSum", by_chars.ok()}, {"frame=closedForm", by_formula.ok()}};
  for (const auto* rep : {&by_chars, &by_formula})
    if (!rep->ok()) {
      r.cert.verdict = etf::Verdict::not_etf;
      if (!r.cert.first_violation)
        r.cert.first_violation = etf::Violation{"three-way Gram agreement", c.group().index(rep->first->g),
                                                c.group().index(rep->first->h), rep->first->what, "equal"};
    }
  return r;
}

void print_violation(std::ostream& err, const etf::EtfCertificate& cert) {
  if (!cert.first_violation) return;
  const auto& v = *cert.first_violation;
  err << "violation: " << v.identity << " at (" << v.row << "," << v.col << "): found " << v.found
      << ", expected " << v.expected << '\n';
}

// ---- build -------------------------------------------------------------

struct BuildOptions {
  int n = 0;
  std::string out;
  std::string format = "text";
  bool full = false;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_build(const BuildOptions& o, const Common& common, std::ostream& out, std::ostream& err) {
  check_n(o.n, 9);
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir = output_dir(o.out);
  fs::create_directories(dir);

  etf::Construction c(o.n);
  json manifest = construction_json(c);
  manifest["command"] = "build";
  manifest["format_version"] = kFormatVersion;
  json params = {{"n", o.n}, {"format", o.format}, {"full", o.full}};
  std::vector<std::string> files;

  etf::EtfCertificate cert;
  if (o.n <= 5 || o.full) {
    if (o.n >= 7) err << "warning: dense frame and Gram at n=" << o.n << " need several GiB of memory\n";
    const auto r = full_run(c, common.threads);
    cert = r.cert;
    std::ostringstream frame_text;
    io::write_frame(frame_text, r.frame);
    write_file(dir / "frame.txt", frame_text.str());
    std::ostringstream gram_text;
    io::write_gram(gram_text, r.gram);
    write_file(dir / "gram.txt", gram_text.str());
    files = {"frame.txt", "gram.txt"};
    params["mode"] = "full";
  } else {
    cert = etf::verify_sampled(c, o.samples, o.seed);
    json pairs = json::array();
    for (const auto& [g, h] : etf::sample_pairs(static_cast<std::uint64_t>(c.num_vectors()), o.samples, o.seed))
      pairs.push_back({g, h});
    write_file(dir / "sample_plan.json", dump({{"generator", "std::mt19937_64"},
                                              {"seed", o.seed},
                                              {"samples", o.samples},
                                              {"index_order", "lex-xy"},
                                              {"pairs", pairs}}));
    files = {"sample_plan.json"};
    params["mode"] = "sample";
    params["samples"] = o.samples;
    params["seed"] = o.seed;
  }
  const json cert_json = etf::to_json(cert);
  write_file(dir / "certificate.json", dump(cert_json));
  files.push_back("certificate.json");
  manifest["parameters"] = params;
  manifest["files"] = files;
  manifest["certificate"] = {{"verdict", cert_json["verdict"]},
                             {"offDiagModulusSquared", cert_json["offDiagModulusSquared"]},
                             {"welchSquared", cert_json["welchSquared"]}};
  write_file(dir / "manifest.json", dump(manifest));

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(dir / "run.json", dump({{"wall_seconds", seconds}, {"threads", common.threads}}));

  out << "n=" << c.n() << " m=" << c.m() << " N=" << c.num_vectors() << " verdict=" << to_string(cert.verdict)
      << " offDiagModulusSquared="
      << (cert.off_diag_modulus_sq ? to_string(*cert.off_diag_modulus_sq) : std::string("-"))
      << " welchSquared=" << (cert.welch_sq ? to_string(*cert.welch_sq) : std::string("-")) << " out=" << dir.string()
      << '\n';
  print_violation(err, cert);
  return cert.verdict == etf::Verdict::optimal ? kOk : kViolation;
}

// ---- verify ------------------------------------------------------------

struct VerifyOptions {
  int n = 0;
  std::string in;
  std::string mode = "full";
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_verify(const VerifyOptions& o, const Common& common, std::ostream& out, std::ostream& err) {
  if ((o.n != 0) == !o.in.empty()) throw UsageError("give exactly one of --n or --in");
  etf::EtfCertificate cert;
  if (!o.in.empty()) {
    io::MatrixFile file;
    try {
      file = io::read_matrix_file(o.in);
    } catch (const io::ParseError& e) {
      throw UsageError(std::string("cannot parse ") + o.in + ": " + e.what());
    }
    if (!file.rational && file.values.denominator() == 1 && file.scale_log2_den == 2)
      cert = etf::verify_frame(io::as_frame(file), common.threads);
    else if (file.rows == file.cols && file.scale_log2_num == 0)
      cert = etf::verify_gram(file.values, common.threads);
    else
      throw UsageError("input is neither a frame file nor an unscaled square Gram file");
  } else {
    check_n(o.n, 9);
    etf::Construction c(o.n);
    if (o.mode == "sample") {
      cert = etf::verify_sampled(c, o.samples, o.seed);
    } else {
      if (o.n > 7) throw UsageError("full verification supports n <= 7; use --mode sample");
      if (o.n == 7) err << "warning: dense n=7 verification needs several GiB of memory\n";
      cert = full_run(c, common.threads).cert;
    }
  }
  out << dump(etf::to_json(cert));
  print_violation(err, cert);
  return cert.verdict == etf::Verdict::optimal ? kOk : kViolation;
}

// ---- search ------------------------------------------------------------

struct SearchOptions {
  std::int64_t max_order = 0;
  bool nonabelian_orders = false;
  std::string out;
};

/// Built-in Suzuki group data for orders 2^(2j), j odd.
class SuzukiData {
 public:
  const etf::Construction* for_order(std::int64_t n) {
    int j = 0;
    while ((std::int64_t{1} << (2 * j)) < n) ++j;
    if ((std::int64_t{1} << (2 * j)) != n || j % 2 == 0 || j < 3 || j > 5) return nullptr;
    auto& slot = cache_[j];
    if (!slot) slot = std::make_unique<etf::Construction>(j);
    return slot.get();
  }

 private:
  std::map<int, std::unique_ptr<etf::Construction>> cache_;
};

int cmd_search(const SearchOptions& o, const Common&, std::ostream& out, std::ostream& err) {
  if (o.max_order < 2) throw UsageError("--max-order must be at least 2");
  auto tuples = search::enumerate_tuples(o.max_order, {o.nonabelian_orders});
  SuzukiData suzuki;
  for (auto& t : tuples) {
    const auto* c = suzuki.for_order(t.n);
    if (!c) continue;
    std::vector<std::uint64_t> sizes;
    for (const auto& cls : c->group().classes()) sizes.push_back(cls.size());
    const std::uint64_t index = c->field().order();  // |G : [G,G]| = 2^n
    t.classes = search::conjugacy_size_filter(t, sizes, index).pass();
    t.chars = search::character_sum_filter(t, c->table().as_class_functions()).pass();
  }
  std::ostringstream csv;
  search::write_csv(csv, tuples);
  if (o.out.empty()) {
    out << csv.str();
    err << "tuples: " << tuples.size() << '\n';
  } else {
    write_file(o.out, csv.str());
    out << "tuples: " << tuples.size() << '\n';
  }
  return kOk;
}

// ---- chartab -----------------------------------------------------------

int cmd_chartab(int n, const std::string& path, std::ostream& out) {
  check_n(n, 7);
  etf::Construction c(n);
  const auto& table = c.table();
  const auto report = chartab::check_orthogonality(table.as_class_functions());
  const std::string text = dump(chartab::to_json(table, report));
  if (path.empty())
    out << text;
  else
    write_file(path, text);
  return report.ok() ? kOk : kViolation;
}

// ---- gram --------------------------------------------------------------

int cmd_gram(int n, const std::string& methods, const std::string& path, const Common& common, std::ostream& out) {
  check_n(n, 5);
  std::vector<std::string> names;
  std::stringstream ss(methods);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) names.push_back(item);
  if (names.empty()) throw UsageError("--method needs at least one of closed-form, character, frame");
  etf::Construction c(n);
  std::vector<QiMatrix> grams;
  for (const auto& name : names) {
    if (name == "closed-form")
      grams.push_back(etf::gram_closed_form_matrix(c, common.threads));
    else if (name == "character")
      grams.push_back(etf::gram_character(c, common.threads));
    else if (name == "frame")
      grams.push_back(etf::gram_from_frame(etf::synthesize_frame(c, common.threads), common.threads));
    else
      throw UsageError("unknown method '" + name + "'");
  }
  if (!path.empty()) {
    std::ostringstream text;
    io::write_gram(text, grams.front());
    write_file(path, text.str());
  }
  int code = kOk;
  if (grams.size() == 1) {
    out << names.front() << ": " << grams.front().rows() << "x" << grams.front().cols() << '\n';
    return code;
  }
  for (std::size_t i = 1; i < grams.size(); ++i) {
    const auto rep = etf::compare_grams(c.group(), grams.front(), grams[i]);
    if (rep.ok()) {
      out << names.front() << " vs " << names[i] << ": AGREE (" << rep.compared << " entries)\n";
    } else {
      out << names.front() << " vs " << names[i] << ": DISAGREE (" << rep.mismatches << " of " << rep.compared
          << " entries; first at " << element_string(rep.first->g) << "," << element_string(rep.first->h) << ": "
          << rep.first->what << ")\n";
      code = kViolation;
    }
  }
  return code;
}

// ---- srg ---------------------------------------------------------------

struct SrgOptions {
  scheme::SrgParameters params;
  std::string adjacency;
};

int cmd_srg(const SrgOptions& o, const Common& common, std::ostream& out) {
  ZiMatrix adjacency;
  if (!o.adjacency.empty()) {
    io::MatrixFile file;
    try {
      file = io::read_matrix_file(o.adjacency);
    } catch (const io::ParseError& e) {
      throw UsageError(std::string("cannot parse ") + o.adjacency + ": " + e.what());
    }
    if (file.values.denominator() != 1) throw UsageError("adjacency matrix must have integer entries");
    adjacency = file.values.numerators();
  } else if (auto builtin = scheme::builtin_srg(o.params)) {
    adjacency = *builtin;
  } else {
    throw UsageError("no built-in graph with these parameters; pass --adjacency");
  }
  scheme::SrgResult result;
  try {
    result = scheme::srg_scheme(adjacency, o.params);
  } catch (const scheme::UnsupportedParameters& e) {
    throw UsageError(e.what());
  } catch (const scheme::ConsistencyError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto& p = o.params;
  json doc = {{"parameters", {{"v", p.v}, {"k", p.k}, {"lambda", p.lambda}, {"mu", p.mu}}},
              {"eigenvalues", {{"plus", result.eig_plus}, {"minus", result.eig_minus}}},
              {"two_k_minus_v", 2 * p.k - p.v},
              {"hyperdiff_index", result.hyperdiff_index ? json(*result.hyperdiff_index) : json(nullptr)},
              {"scheme", scheme::summary_json(result.scheme, result.report)}};
  int code = kOk;
  if (result.hyperdiff_index) {
    const auto cert = etf::verify_gram(result.scheme.idempotents[*result.hyperdiff_index], common.threads);
    doc["certificate"] = etf::to_json(cert);
    if (cert.verdict != etf::Verdict::optimal) code = kViolation;
  }
  out << dump(doc);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equiangular tight frames from Suzuki 2-groups, with exact certification"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_flag("--json-errors", common.json_errors, "Report errors as JSON on standard error");

  BuildOptions build;
  auto* b = app.add_subcommand("build", "Synthesize and certify the frame for GF(2^n)");
  b->add_option("--n", build.n, "Odd field degree, 3..9")->required();
  b->add_option("--out", build.out, std::string("Output directory (default $") + kOutDirEnv + " or linepack-out)");
  b->add_option("--format", build.format, "Matrix file format")->check(CLI::IsMember({"text"}));
  b->add_flag("--full", build.full, "Dense frame and Gram even for n >= 7");
  b->add_option("--samples", build.samples, "Sampled entries for n >= 7")->capture_default_str();
  b->add_option("--seed", build.seed, "Sampling seed")->capture_default_str();

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Certify a construction or a matrix file");
  v->add_option("--n", verify.n, "Odd field degree");
  v->add_option("--in", verify.in, "Frame or Gram matrix file");
  v->add_option("--mode", verify.mode, "full or sample")->check(CLI::IsMember({"full", "sample"}));
  v->add_option("--samples", verify.samples, "Sampled entries")->capture_default_str();
  v->add_option("--seed", verify.seed, "Sampling seed")->capture_default_str();

  SearchOptions search_opts;
  auto* s = app.add_subcommand("search", "Enumerate constant-degree parameter tuples");
  s->add_option("--max-order", search_opts.max_order, "Largest group order")->required();
  s->add_flag("--nonabelian-orders", search_opts.nonabelian_orders,
              "Skip orders for which every group is abelian");
  s->add_option("--out", search_opts.out, "CSV output file (default standard output)");

  int chartab_n = 0;
  std::string chartab_out;
  auto* ct = app.add_subcommand("chartab", "Character table with orthogonality report");
  ct->add_option("--n", chartab_n, "Odd field degree, 3..7")->required();
  ct->add_option("--out", chartab_out, "JSON output file (default standard output)");

  int gram_n = 0;
  std::string gram_methods = "closed-form";
  std::string gram_out;
  auto* g = app.add_subcommand("gram", "Gram matrix by one or more methods, cross-checked");
  g->add_option("--n", gram_n, "Odd field degree, 3..5")->required();
  g->add_option("--method", gram_methods, "Comma list of closed-form, character, frame")->capture_default_str();
  g->add_option("--out", gram_out, "Write the first method's Gram matrix here");

  SrgOptions srg;
  auto* r = app.add_subcommand("srg", "Two-class scheme of a strongly regular graph");
  r->add_option("--v", srg.params.v, "Vertices")->required();
  r->add_option("--k", srg.params.k, "Valency")->required();
  r->add_option("--lambda", srg.params.lambda, "Common neighbours of adjacent vertices")->required();
  r->add_option("--mu", srg.params.mu, "Common neighbours of non-adjacent vertices")->required();
  r->add_option("--adjacency", srg.adjacency, "Adjacency matrix file (integer entries)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(common, err, kUsage, "usage", e.what());
    return kUsage;
  }

  try {
    if (b->parsed()) return cmd_build(build, common, out, err);
    if (v->parsed()) return cmd_verify(verify, common, out, err);
    if (s->parsed()) return cmd_search(search_opts, common, out, err);
    if (ct->parsed()) return cmd_chartab(chartab_n, chartab_out, out);
    if (g->parsed()) return cmd_gram(gram_n, gram_methods, gram_out, common, out);
    if (r->parsed()) return cmd_srg(srg, common, out);
  } catch (const UsageError& e) {
    report_error(common, err, kUsage, "usage", e.what());
    return kUsage;
  } catch (const scheme::ConsistencyError& e) {
    report_error(common, err, kViolation, "consistency", e.what());
    return kViolation;
  } catch (const std::exception& e) {
    report_error(common, err, kViolation, "failure", e.what());
    return kViolation;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace linepack::cli
