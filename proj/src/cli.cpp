#include "knotscope/cli.hpp"

#include "knotscope/ballmapper.hpp"
#include "knotscope/conjectures.hpp"
#include "knotscope/error.hpp"
#include "knotscope/export.hpp"
#include "knotscope/ingest.hpp"
#include "knotscope/invariants.hpp"
#include "knotscope/khovanov.hpp"
#include "knotscope/parallel.hpp"
#include "knotscope/pca.hpp"
#include "knotscope/stats.hpp"
#include "knotscope/vectorize.hpp"
#include "detail/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <sstream>

namespace knotscope::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
  }
  void update(const char* data, std::size_t n) { EVP_DigestUpdate(ctx_.get(), data, n); }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &len);
    std::ostringstream os;
    for (unsigned k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
    return os.str();
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double round1(double v) { return std::round(v * 10.0) / 10.0; }

// Options shared by every subcommand that reads a dataset.
struct DataOptions {
  std::string input;
  std::optional<int> max_crossing;
  std::optional<int> crossing;
  std::string group = "all";
  bool mirrors = false;

  void add_to(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("-i,--input", input, "Dataset CSV");
    if (required) opt->required();
    app->add_option("--max-crossing", max_crossing, "Keep knots with at most this many crossings");
    app->add_option("--crossing", crossing, "Keep knots with exactly this many crossings");
    app->add_option("--group", group, "all, alt (only alternating) or nonalt (exclude alternating)");
    app->add_flag("--mirrors", mirrors, "Append the mirror of every knot");
  }

  RecordFilter filter() const { return {max_crossing, crossing, parse_alternating_mode(group)}; }
};

struct Context {
  Context(std::ostream& o, std::ostream& e) : out(o), err(e) {}
  std::ostream& out;
  std::ostream& err;
  unsigned threads = 1;
  bool force = false;
  std::string command;
  json config = json::object();
  json inputs = json::array();

  json provenance() const {
    return {{"tool", "knotscope"}, {"version", kVersion}, {"command", command}, {"config", config}, {"inputs", inputs}};
  }

  void record_input(const std::string& path) {
    if (!fs::exists(path)) throw MissingDataError("input '" + path + "' does not exist");
    inputs.push_back({{"path", path}, {"sha256", sha256_file(path)}});
  }

  Dataset load(const DataOptions& o) {
    record_input(o.input);
    Dataset d = load_dataset(o.input, {}, threads);
    auto f = o.filter();
    if (f.max_crossing || f.exact_crossing || f.alternating != AlternatingMode::kAll) d = knotscope::filter(d, f);
    if (o.mirrors) d = with_mirrors(d);
    return d;
  }

  // Writes to `path`, or to `out` when the path is empty.
  void emit(const std::string& text, const std::string& path) const {
    if (path.empty()) {
      out << text;
      return;
    }
    write_file(text, path);
  }

  void write_file(const std::string& text, const std::string& path) const {
    if (fs::exists(path) && !force) throw OutputExists(path);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
  }

  void emit_json(json body, const std::string& path) const {
    body["provenance"] = provenance();
    emit(body.dump(2) + "\n", path);
  }

  struct OutputExists : Error {
    explicit OutputExists(const std::string& p)
        : Error("output '" + p + "' already exists; pass --force to overwrite") {}
  };
};

std::vector<InvariantKind> kinds_of(const std::string& text) { return parse_invariant_kinds(text); }

std::vector<std::string> kind_names(std::span<const InvariantKind> kinds) {
  std::vector<std::string> out;
  for (auto k : kinds) out.emplace_back(name(k));
  return out;
}

// Builds the embedding either fresh or from a saved cloud sidecar's spec.
PointCloud make_cloud(Context& ctx, const Dataset& d, const std::string& keys, const std::vector<int>& weights,
                      const std::string& spec_from) {
  EmbeddingSpec spec;
  if (!spec_from.empty()) {
    ctx.record_input(sidecar_path(spec_from).string());
    spec = load_cloud(spec_from).spec();
  } else {
    auto kinds = kinds_of(keys);
    spec = compute_spec(d, kinds, weights);
  }
  PointCloud cloud = embed(d, spec, ctx.threads);
  if (cloud.rows() == 0) throw MissingDataError("no knots left after filtering");
  return cloud;
}

std::string cloud_fingerprint(const PointCloud& c) {
  Sha256 h;
  std::string dims = std::to_string(c.rows()) + "x" + std::to_string(c.dimension()) + "\n";
  h.update(dims.data(), dims.size());
  for (auto v : c.data()) {
    std::uint32_t u = static_cast<std::uint32_t>(v);
    char bytes[4] = {char(u & 0xff), char((u >> 8) & 0xff), char((u >> 16) & 0xff), char((u >> 24) & 0xff)};
    h.update(bytes, 4);
  }
  for (const auto& id : c.row_ids()) h.update((id + "\n").data(), id.size() + 1);
  return "sha256:" + h.hex();
}

// Per-row scalar field used by colorings and correlations.
std::vector<double> field_values(const Dataset& d, const std::string& field) {
  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& r = d[i];
    auto need = [&r, &field](const std::optional<int>& x) {
      if (!x) throw MissingDataError(r.id + ": no value for '" + field + "'");
      return static_cast<double>(*x);
    };
    if (field == "signature") v[i] = need(r.signature);
    else if (field == "s") v[i] = need(r.s);
    else if (field == "crossings") v[i] = need(r.crossings);
    else if (field == "signature_mod4") v[i] = signature_mod4(r);
    else if (field == "determinant") v[i] = determinant(r).convert_to<double>();
    else if (field == "jones_span") v[i] = static_cast<double>(jones_span(r));
    else if (field == "alternating") {
      if (!r.alternating) throw MissingDataError(r.id + ": no value for 'alternating'");
      v[i] = *r.alternating ? 1.0 : 0.0;
    } else if (field == "width") {
      auto sets = diagonal_sets(r);
      if (!sets) throw MissingDataError(r.id + ": no Khovanov data for 'width'");
      v[i] = width(*sets, CoefficientView::kRational);
    } else {
      throw ValidationError("unknown field '" + field +
                            "' (signature, s, crossings, signature_mod4, determinant, jones_span, alternating, width)");
    }
  }
  return v;
}

// "field[:aggregator[:transform]]", or "diagonals" for the categorical
// diagonal-set coloring.
Coloring make_coloring(const Dataset& d, const BallMapperGraph& g, const std::string& spec) {
  auto parts = detail::split(spec, ':');
  std::string field(detail::trim(parts[0]));
  if (field == "diagonals") {
    if (parts.size() != 1) throw ValidationError("the diagonals coloring takes no aggregator");
    std::vector<std::string> labels(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      auto sets = diagonal_sets(d[i]);
      if (!sets) throw MissingDataError(d[i].id + ": no Khovanov data for the diagonals coloring");
      labels[i] = diagonal_label(*sets);
    }
    return color_categorical(g, labels, "diagonals");
  }
  if (parts.size() > 3) throw ValidationError("coloring '" + spec + "' has too many parts");
  Aggregator agg = parts.size() > 1 ? parse_aggregator(parts[1]) : Aggregator::kMean;
  Transform tr = parts.size() > 2 ? parse_transform(parts[2]) : Transform::kIdentity;
  auto values = field_values(d, field);
  std::string label = field + ":" + std::string(name(agg));
  if (tr != Transform::kIdentity) label += ":" + std::string(name(tr));
  return color_scalar(g, values, agg, tr, label);
}

void require_cover(const BallMapperGraph& g) {
  std::vector<bool> seen(g.cloud_rows, false);
  for (const auto& c : g.covers)
    for (auto r : c) seen[r] = true;
  for (std::size_t r = 0; r < seen.size(); ++r)
    if (!seen[r]) throw IntegrityError("row " + std::to_string(r) + " is not covered by any ball");
}

GraphBundle load_bundle(Context& ctx, const std::string& path) {
  ctx.record_input(path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_bundle(ss.str());
}

// Knot ids covered by a fully-listed bundle, sorted.
std::vector<std::string> bundle_ids(const GraphBundle& b) {
  std::set<std::string> ids;
  for (const auto& n : b.nodes) ids.insert(n.members.begin(), n.members.end());
  return {ids.begin(), ids.end()};
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  if (detail::trim(text).empty()) return out;
  for (auto tok : detail::split(text, ',')) out.push_back(detail::parse_int<std::size_t>(tok, "vertex list"));
  return out;
}

std::vector<Epsilon> parse_epsilon_list(const std::string& text) {
  std::vector<Epsilon> out;
  for (auto tok : detail::split(text, ',')) out.push_back(Epsilon::parse(tok));
  return out;
}

json diag_json(const std::optional<std::vector<int>>& v) {
  if (!v) return nullptr;
  return *v;
}

json row_json(const CounterexampleRow& r) {
  json j{{"id", r.id},
         {"signature", r.sigma},
         {"s", r.s ? json(*r.s) : json(nullptr)},
         {"rational", r.sets.rational},
         {"z2", diag_json(r.sets.z2)},
         {"z4", diag_json(r.sets.z4)},
         {"width_rational", r.width_rational},
         {"width_integral", r.width_integral ? json(*r.width_integral) : json(nullptr)},
         {"rational_holds", r.rational_holds},
         {"integral_holds", r.integral_holds ? json(*r.integral_holds) : json(nullptr)},
         {"integral_counterexample", r.integral_counterexample()}};
  return j;
}

int exit_code_of(const std::exception_ptr& e, std::ostream& err) {
  try {
    std::rethrow_exception(e);
  } catch (const Context::OutputExists& x) {
    err << "error: " << x.what() << "\n";
    return kOutputExists;
  } catch (const StaleSpecError& x) {
    err << "error: stale embedding spec: " << x.what() << "\n";
    return kStaleSpec;
  } catch (const IntegrityError& x) {
    err << "error: data integrity: " << x.what() << "\n";
    return kIntegrity;
  } catch (const MissingDataError& x) {
    err << "error: missing data: " << x.what() << "\n";
    return kMissingData;
  } catch (const ParseError& x) {
    err << "error: cannot parse input: " << x.what() << "\n";
    return kBadInput;
  } catch (const ValidationError& x) {
    err << "error: invalid input: " << x.what() << "\n";
    return kBadInput;
  } catch (const std::exception& x) {
    err << "error: " << x.what() << "\n";
    return kFailure;
  }
}

// Every option given on the leaf subcommand, except those that only choose
// where results go.
json config_of(const CLI::App* leaf) {
  static const std::set<std::string> skip{"--output", "--bundle-out", "--histogram-csv", "--csv", "--cloud-out", "--help"};
  json config = json::object();
  for (const auto* opt : leaf->get_options()) {
    if (opt->count() == 0 || skip.contains(opt->get_name())) continue;
    auto res = opt->results();
    if (opt->get_type_size() == 0) config[opt->get_name()] = true;
    else if (res.size() == 1) config[opt->get_name()] = res.front();
    else config[opt->get_name()] = res;
  }
  return config;
}

}  // namespace

std::string sha256_bytes(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingDataError("cannot read '" + path + "'");
  Sha256 h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knot invariant datasets: Ball Mapper graphs, statistics and conjecture checks", "knotscope"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  Context ctx{out, err};
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "Worker threads (default: KNOTSCOPE_THREADS or hardware)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--force", ctx.force, "Overwrite existing output files");

  std::function<void()> action;
  CLI::App* leaf = nullptr;
  auto leaf_cmd = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* sub = parent->add_subcommand(name, desc);
    sub->parse_complete_callback([&, sub] {
      leaf = sub;
      std::string path = sub->get_name();
      for (auto* p = sub->get_parent(); p && p->get_parent(); p = p->get_parent()) path = p->get_name() + " " + path;
      ctx.command = path;
    });
    return sub;
  };
  std::string output;
  auto add_output = [&output](CLI::App* sub) { sub->add_option("-o,--output", output, "Output file (default stdout)"); };

  // ---- stats ----
  auto* stats = app.add_subcommand("stats", "Multiplicity statistics")->require_subcommand(1);
  DataOptions st_data;
  std::string st_keys = "alexander";
  std::vector<std::string> st_probe;
  bool st_classes = false;
  std::string st_hist;
  auto* st_mult = leaf_cmd(stats, "multiplicity", "Unique/distinct counts for an invariant tuple");
  st_data.add_to(st_mult);
  st_mult->add_option("--keys", st_keys, "Invariant tuple, e.g. alexander+jones");
  st_mult->add_option("--probe", st_probe, "Polynomial text per key; reports the matching class");
  st_mult->add_flag("--classes", st_classes, "Include every class with its members");
  st_mult->add_option("--histogram-csv", st_hist, "Write multiplicity,count table here");
  add_output(st_mult);
  st_mult->final_callback([&] {
    action = [&] {
      auto d = ctx.load(st_data);
      auto keys = kinds_of(st_keys);
      auto rep = multiplicity(d, keys, ctx.threads);
      json hist = json::array();
      std::string csv = "multiplicity,count\n";
      for (const auto& [m, c] : rep.histogram) {
        hist.push_back({m, c});
        csv += std::to_string(m) + "," + std::to_string(c) + "\n";
      }
      json body{{"keys", kind_names(keys)},
                {"n", rep.n},
                {"unique", rep.unique_count()},
                {"distinct", rep.distinct_count()},
                {"unique_pct", round1(rep.unique_pct())},
                {"distinct_pct", round1(rep.distinct_pct())},
                {"histogram", hist}};
      if (!st_probe.empty()) {
        auto members = class_lookup(rep, probe_key(keys, st_probe));
        body["probe"] = {{"count", members.size()}, {"members", members}};
      }
      if (st_classes) {
        json classes = json::object();
        for (const auto& [k, m] : rep.classes) classes[k] = m;
        body["classes"] = classes;
      }
      if (!st_hist.empty()) ctx.write_file(csv, st_hist);
      ctx.emit_json(body, output);
    };
  });

  DataOptions sf_data;
  std::vector<std::string> sf_keysets{"alexander", "jones"};
  std::string sf_csv;
  auto* st_filt = leaf_cmd(stats, "filtration", "Unique/distinct percentages per cumulative crossing level");
  sf_data.add_to(st_filt);
  st_filt->add_option("--keysets", sf_keysets, "One or more invariant tuples")->delimiter(',');
  st_filt->add_option("--csv", sf_csv, "Also write the table as CSV");
  add_output(st_filt);
  st_filt->final_callback([&] {
    action = [&] {
      auto d = ctx.load(DataOptions{sf_data.input, sf_data.max_crossing, sf_data.crossing, "all", sf_data.mirrors});
      std::vector<std::vector<InvariantKind>> keysets;
      for (const auto& k : sf_keysets) keysets.push_back(kinds_of(k));
      auto rows = filtration_curves(d, keysets, parse_alternating_mode(sf_data.group));
      json jr = json::array();
      std::string csv = "max_crossing,keyset,n,unique,distinct,unique_pct,distinct_pct\n";
      for (const auto& r : rows) {
        jr.push_back({{"max_crossing", r.max_crossing}, {"keyset", r.keyset}, {"n", r.n}, {"unique", r.unique},
                      {"distinct", r.distinct}, {"unique_pct", round1(r.unique_pct)},
                      {"distinct_pct", round1(r.distinct_pct)}});
        csv += std::to_string(r.max_crossing) + "," + r.keyset + "," + std::to_string(r.n) + "," +
               std::to_string(r.unique) + "," + std::to_string(r.distinct) + "," + fmt(round1(r.unique_pct)) + "," +
               fmt(round1(r.distinct_pct)) + "\n";
      }
      if (!sf_csv.empty()) ctx.write_file(csv, sf_csv);
      ctx.emit_json({{"group", sf_data.group}, {"rows", jr}}, output);
    };
  });

  // ---- fox ----
  auto* fox = app.add_subcommand("fox", "Fox trapezoidal conjecture")->require_subcommand(1);
  std::string fc_poly;
  std::optional<int> fc_sigma;
  auto* fox_chk = leaf_cmd(fox, "check", "Check one Alexander polynomial");
  fox_chk->add_option("--poly", fc_poly, "Alexander polynomial text, e.g. 1:-1;-1:0;1:1")->required();
  fox_chk->add_option("--sigma", fc_sigma, "Signature, for the Hirasawa-Murasugi bound");
  add_output(fox_chk);
  fox_chk->final_callback([&] {
    action = [&] {
      auto f = fox_check(parse_poly1(fc_poly));
      json body{{"holds", f.holds},
                {"n", f.n},
                {"m", f.m ? json(*f.m) : json(nullptr)},
                {"is_triangle", f.is_triangle},
                {"sign_alternation_ok", f.sign_alternation_ok},
                {"symmetric_ok", f.symmetric_ok}};
      if (fc_sigma && f.holds) body["hm_bound_holds"] = hm_check(f, *fc_sigma);
      ctx.emit_json(body, output);
    };
  });

  DataOptions fs_data;
  int fs_bins = 1;
  std::string fs_hist;
  auto* fox_sur = leaf_cmd(fox, "survey", "Fox check over a dataset with determinant histograms");
  fs_data.add_to(fox_sur);
  fox_sur->add_option("--bins-per-decade", fs_bins, "Histogram resolution")->check(CLI::PositiveNumber);
  fox_sur->add_option("--histogram-csv", fs_hist, "Write bin,holds,fails table here");
  add_output(fox_sur);
  fox_sur->final_callback([&] {
    action = [&] {
      auto d = ctx.load(fs_data);
      auto s = fox_survey(d, {}, fs_bins, ctx.threads);
      std::map<int, std::pair<std::size_t, std::size_t>> bins;
      for (const auto& [b, c] : s.det_holds) bins[b].first = c;
      for (const auto& [b, c] : s.det_fails) bins[b].second = c;
      json hist = json::array();
      std::string csv = "bin,log10_lower,holds,fails\n";
      for (const auto& [b, c] : bins) {
        double lower = static_cast<double>(b) / fs_bins;
        hist.push_back({{"bin", b}, {"log10_lower", lower}, {"holds", c.first}, {"fails", c.second}});
        csv += std::to_string(b) + "," + fmt(lower) + "," + std::to_string(c.first) + "," + std::to_string(c.second) + "\n";
      }
      if (!fs_hist.empty()) ctx.write_file(csv, fs_hist);
      ctx.emit_json({{"total", s.total},
                     {"holds", s.holds},
                     {"fails", s.fails},
                     {"trapezoids", s.trapezoids},
                     {"triangles", s.triangles},
                     {"bins_per_decade", s.bins_per_decade},
                     {"determinant_histogram", hist}},
                    output);
    };
  });

  // ---- embed ----
  DataOptions em_data;
  std::string em_keys = "alexander";
  std::vector<int> em_weights;
  auto* emb = leaf_cmd(&app, "embed", "Write the coefficient point cloud (CSV matrix plus JSON sidecar)");
  em_data.add_to(emb);
  emb->add_option("--keys", em_keys, "Invariant kinds to concatenate");
  emb->add_option("--weights", em_weights, "Integer weight per kind")->delimiter(',');
  emb->add_option("-o,--output", output, "Matrix path; the sidecar is written next to it")->required();
  emb->final_callback([&] {
    action = [&] {
      auto d = ctx.load(em_data);
      auto cloud = make_cloud(ctx, d, em_keys, em_weights, "");
      if (!ctx.force && (fs::exists(output) || fs::exists(sidecar_path(output))))
        throw Context::OutputExists(output);
      save_cloud(cloud, output);
    };
  });

  // ---- bm ----
  auto* bm = app.add_subcommand("bm", "Ball Mapper graphs")->require_subcommand(1);
  DataOptions bb_data;
  std::string bb_keys = "alexander", bb_eps, bb_members = "full", bb_spec, bb_cloud_out;
  std::vector<int> bb_weights;
  std::vector<std::string> bb_colors;
  std::size_t bb_min = 0;
  auto* bm_build = leaf_cmd(bm, "build", "Build a Ball Mapper graph and write a gbm/1 bundle");
  bb_data.add_to(bm_build);
  bm_build->add_option("--keys", bb_keys, "Invariant kinds to concatenate, e.g. alexander+jones");
  bm_build->add_option("--weights", bb_weights, "Integer weight per kind")->delimiter(',');
  bm_build->add_option("--epsilon", bb_eps, "Ball radius as an exact rational, e.g. 100 or 225/2")->required();
  bm_build->add_option("--color", bb_colors, "field[:aggregator[:transform]] or diagonals");
  bm_build->add_option("--min-component", bb_min, "Drop components with fewer vertices");
  bm_build->add_option("--members", bb_members, "full or capped:K");
  bm_build->add_option("--spec-from", bb_spec, "Reuse the embedding spec of a saved cloud");
  bm_build->add_option("--cloud-out", bb_cloud_out, "Also save the point cloud");
  add_output(bm_build);
  bm_build->final_callback([&] {
    action = [&] {
      auto d = ctx.load(bb_data);
      auto eps = Epsilon::parse(bb_eps);
      auto policy = MemberPolicy::parse(bb_members);
      auto cloud = make_cloud(ctx, d, bb_keys, bb_weights, bb_spec);
      if (!bb_cloud_out.empty()) {
        if (!ctx.force && fs::exists(bb_cloud_out)) throw Context::OutputExists(bb_cloud_out);
        save_cloud(cloud, bb_cloud_out);
      }
      auto g = build_graph(cloud, build_net(cloud, eps, ctx.threads), ctx.threads);
      g.cloud_ref = cloud_fingerprint(cloud);
      require_cover(g);
      std::vector<Coloring> colorings;
      for (const auto& c : bb_colors) colorings.push_back(make_coloring(d, g, c));
      if (bb_min > 1) {
        std::vector<bool> keep(g.vertex_count(), false);
        auto filtered = filter_components(g, bb_min);
        std::size_t k = 0;
        for (std::size_t v = 0; v < g.vertex_count() && k < filtered.vertex_count(); ++v)
          if (g.landmarks[v] == filtered.landmarks[k]) keep[v] = true, ++k;
        for (auto& c : colorings) {
          Coloring kept{c.name, c.kind, {}, {}};
          for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            if (!keep[v]) continue;
            if (c.kind == Coloring::Kind::kScalar) kept.scalar.push_back(c.scalar[v]);
            else kept.categorical.push_back(c.categorical[v]);
          }
          c = std::move(kept);
        }
        g = std::move(filtered);
      }
      auto kinds = cloud.spec().kinds();
      RecordFilter f = bb_data.filter();
      std::string filter_text = f.describe() + (bb_data.mirrors ? ",mirrors" : "");
      if (bb_min > 1) filter_text += ",min_component=" + std::to_string(bb_min);
      auto bundle = make_bundle(g, cloud.row_ids(), std::move(colorings),
                                BundleMeta{g.cloud_ref, eps.text(), kind_names(kinds), filter_text, 0}, policy);
      bundle.provenance = ctx.provenance();
      ctx.emit(write_bundle(bundle), output);
    };
  });

  DataOptions bc_data;
  std::string bc_bundle;
  std::vector<std::string> bc_colors;
  auto* bm_color = leaf_cmd(bm, "color", "Add colorings to a bundle from dataset fields");
  bc_data.add_to(bm_color);
  bm_color->add_option("--bundle", bc_bundle, "gbm/1 bundle with full membership")->required();
  bm_color->add_option("--color", bc_colors, "field[:aggregator[:transform]] or diagonals")->required();
  add_output(bm_color);
  bm_color->final_callback([&] {
    action = [&] {
      auto b = load_bundle(ctx, bc_bundle);
      auto d = ctx.load(bc_data);
      std::vector<std::string> ids;
      for (const auto& r : d.records()) ids.push_back(r.id);
      auto g = graph_from_bundle(b, ids);
      for (const auto& c : bc_colors) {
        auto col = make_coloring(d, g, c);
        std::erase_if(b.colorings, [&col](const Coloring& x) { return x.name == col.name; });
        b.colorings.push_back(std::move(col));
      }
      std::sort(b.colorings.begin(), b.colorings.end(), [](const auto& x, const auto& y) { return x.name < y.name; });
      b.provenance = ctx.provenance();
      ctx.emit(write_bundle(b), output);
    };
  });

  std::string bmap_from, bmap_to, bmap_vertices, bmap_selection, bmap_name = "map", bmap_bundle_out;
  auto* bm_map = leaf_cmd(bm, "map", "Cross-mapper coloring induced by a vertex or knot selection");
  bm_map->add_option("--from", bmap_from, "Bundle the selection refers to");
  bm_map->add_option("--to", bmap_to, "Bundle to color")->required();
  bm_map->add_option("--vertices", bmap_vertices, "Comma-separated vertex ids of --from");
  bm_map->add_option("--selection", bmap_selection, "File with one knot id per line");
  bm_map->add_option("--name", bmap_name, "Coloring name");
  bm_map->add_option("--bundle-out", bmap_bundle_out, "Also write --to with the coloring added");
  add_output(bm_map);
  bm_map->final_callback([&] {
    action = [&] {
      if (bmap_selection.empty() == bmap_from.empty())
        throw ValidationError("give either --from with --vertices, or --selection");
      auto to = load_bundle(ctx, bmap_to);
      auto g_ids = bundle_ids(to);
      auto g_g = graph_from_bundle(to, g_ids);
      Coloring col;
      if (!bmap_from.empty()) {
        auto from = load_bundle(ctx, bmap_from);
        auto f_ids = bundle_ids(from);
        auto g_f = graph_from_bundle(from, f_ids);
        auto selected = parse_index_list(bmap_vertices);
        col = map_mappers(g_f, f_ids, g_g, g_ids, selected, bmap_name);
      } else {
        ctx.record_input(bmap_selection);
        std::ifstream in(bmap_selection);
        std::set<std::string, std::less<>> chosen;
        std::string line;
        while (std::getline(in, line))
          if (auto t = detail::trim(line); !t.empty()) chosen.emplace(t);
        col = map_selection(g_g, g_ids, chosen, bmap_name);
      }
      if (!bmap_bundle_out.empty()) {
        std::erase_if(to.colorings, [&col](const Coloring& x) { return x.name == col.name; });
        to.colorings.push_back(col);
        std::sort(to.colorings.begin(), to.colorings.end(), [](const auto& x, const auto& y) { return x.name < y.name; });
        to.provenance = ctx.provenance();
        ctx.write_file(write_bundle(to), bmap_bundle_out);
      }
      ctx.emit_json({{"name", col.name}, {"kind", "scalar"}, {"values", col.scalar}}, output);
    };
  });

  std::string bcomp_bundle;
  std::size_t bcomp_min = 0;
  std::string bcomp_out;
  auto* bm_comp = leaf_cmd(bm, "components", "Connected components of a bundle's graph");
  bm_comp->add_option("--bundle", bcomp_bundle, "gbm/1 bundle")->required();
  bm_comp->add_option("--min", bcomp_min, "Keep components with at least this many vertices");
  bm_comp->add_option("--bundle-out", bcomp_out, "Write the filtered bundle here");
  add_output(bm_comp);
  bm_comp->final_callback([&] {
    action = [&] {
      auto b = load_bundle(ctx, bcomp_bundle);
      BallMapperGraph g;
      g.cloud_rows = b.nodes.size();
      for (const auto& n : b.nodes) {
        g.landmarks.push_back(n.id);
        g.covers.push_back({n.id});
      }
      for (const auto& e : b.edges) g.edges.push_back({e.source, e.target, e.overlap});
      auto comps = components(g);
      json jc = json::array();
      std::vector<bool> keep(b.nodes.size(), false);
      for (const auto& c : comps) {
        jc.push_back({{"size", c.size()}, {"vertices", c}});
        if (c.size() >= bcomp_min)
          for (auto v : c) keep[v] = true;
      }
      std::size_t kept = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
      if (!bcomp_out.empty()) {
        std::vector<std::size_t> renumber(b.nodes.size(), 0);
        GraphBundle nb = b;
        nb.nodes.clear();
        nb.edges.clear();
        for (std::size_t v = 0; v < b.nodes.size(); ++v)
          if (keep[v]) {
            renumber[v] = nb.nodes.size();
            nb.nodes.push_back(b.nodes[v]);
            nb.nodes.back().id = renumber[v];
          }
        for (const auto& e : b.edges)
          if (keep[e.source]) nb.edges.push_back({renumber[e.source], renumber[e.target], e.overlap});
        for (auto& c : nb.colorings) {
          Coloring k{c.name, c.kind, {}, {}};
          for (std::size_t v = 0; v < b.nodes.size(); ++v) {
            if (!keep[v]) continue;
            if (c.kind == Coloring::Kind::kScalar) k.scalar.push_back(c.scalar[v]);
            else k.categorical.push_back(c.categorical[v]);
          }
          c = std::move(k);
        }
        nb.meta.filter += ",min_component=" + std::to_string(bcomp_min);
        nb.provenance = ctx.provenance();
        ctx.write_file(write_bundle(nb), bcomp_out);
      }
      ctx.emit_json({{"components", jc}, {"count", comps.size()}, {"kept_vertices", kept}}, output);
    };
  });

  DataOptions bs_data;
  std::string bs_keys = "alexander", bs_eps;
  auto* bm_sweep = leaf_cmd(bm, "sweep", "Vertices, edges, components and flares over an epsilon grid");
  bs_data.add_to(bm_sweep);
  bm_sweep->add_option("--keys", bs_keys, "Invariant kinds");
  bm_sweep->add_option("--epsilons", bs_eps, "Comma-separated rationals")->required();
  add_output(bm_sweep);
  bm_sweep->final_callback([&] {
    action = [&] {
      auto d = ctx.load(bs_data);
      auto cloud = make_cloud(ctx, d, bs_keys, {}, "");
      auto grid = parse_epsilon_list(bs_eps);
      json rows = json::array();
      for (const auto& r : epsilon_sweep(cloud, grid, ctx.threads))
        rows.push_back({{"epsilon", r.epsilon.text()}, {"vertices", r.vertices}, {"edges", r.edges},
                        {"components", r.components}, {"flares", r.flares}});
      ctx.emit_json({{"rows", rows}}, output);
    };
  });

  // ---- pca ----
  auto* pca = app.add_subcommand("pca", "Principal component analysis of coefficient clouds")->require_subcommand(1);
  DataOptions pc_data;
  std::string pc_keys = "alexander", pc_spec;
  double pc_threshold = 0.95;
  auto* pca_spec = leaf_cmd(pca, "spectrum", "Explained-variance ratios");
  pc_data.add_to(pca_spec);
  pca_spec->add_option("--keys", pc_keys, "Invariant kinds");
  pca_spec->add_option("--spec-from", pc_spec, "Reuse the embedding spec of a saved cloud");
  add_output(pca_spec);
  pca_spec->final_callback([&] {
    action = [&] {
      auto d = ctx.load(pc_data);
      auto s = spectrum(make_cloud(ctx, d, pc_keys, {}, pc_spec));
      ctx.emit_json({{"degenerate", s.degenerate}, {"ratios", s.ratios}, {"cumulative", s.cumulative},
                     {"dimension_95", dimension_at(s, 0.95)}},
                    output);
    };
  });

  DataOptions pd_data;
  std::string pd_keys = "alexander", pd_levels;
  auto* pca_pd = leaf_cmd(pca, "persistent-dim", "Smallest dimension reaching the threshold at every level");
  pd_data.add_to(pca_pd);
  pca_pd->add_option("--keys", pd_keys, "Invariant kinds");
  pca_pd->add_option("--levels", pd_levels, "Comma-separated cumulative crossing levels (default: all present)");
  pca_pd->add_option("--threshold", pc_threshold, "Cumulative explained-variance threshold");
  add_output(pca_pd);
  pca_pd->final_callback([&] {
    action = [&] {
      auto d = ctx.load(pd_data);
      auto kinds = kinds_of(pd_keys);
      auto spec = compute_spec(d, kinds);
      std::vector<int> levels;
      if (!pd_levels.empty()) {
        for (auto tok : detail::split(pd_levels, ',')) levels.push_back(detail::parse_int<int>(tok, "levels"));
      } else {
        std::set<int> seen;
        for (const auto& r : d.records())
          if (r.crossings) seen.insert(*r.crossings);
        levels.assign(seen.begin(), seen.end());
      }
      std::vector<Spectrum> spectra;
      json per = json::object();
      for (int level : levels) {
        RecordFilter f;
        f.max_crossing = level;
        auto sub = knotscope::filter(d, f);
        if (sub.size() < 2) continue;
        spectra.push_back(spectrum(embed(sub, spec, ctx.threads)));
        per[std::to_string(level)] = {{"n", sub.size()}, {"dimension", dimension_at(spectra.back(), pc_threshold)},
                                      {"cumulative", spectra.back().cumulative}};
      }
      if (spectra.empty()) throw MissingDataError("no filtration level has two or more knots");
      ctx.emit_json({{"threshold", pc_threshold}, {"persistent_dimension", persistent_dimension(spectra, pc_threshold)},
                     {"levels", per}},
                    output);
    };
  });

  DataOptions pr_data;
  std::string pr_keys = "alexander", pr_field = "determinant";
  auto* pca_cor = leaf_cmd(pca, "correlate", "Pearson correlation of the first principal score with a field");
  pr_data.add_to(pca_cor);
  pca_cor->add_option("--keys", pr_keys, "Invariant kinds");
  pca_cor->add_option("--against", pr_field, "Scalar field (default determinant)");
  add_output(pca_cor);
  pca_cor->final_callback([&] {
    action = [&] {
      auto d = ctx.load(pr_data);
      auto scores = project2(make_cloud(ctx, d, pr_keys, {}, ""));
      std::vector<double> pc1(scores.size());
      for (std::size_t i = 0; i < scores.size(); ++i) pc1[i] = scores[i][0];
      auto values = field_values(d, pr_field);
      double r = pearson(pc1, values);
      ctx.emit_json({{"field", pr_field}, {"n", d.size()}, {"r", r}, {"abs_r", std::abs(r)},
                     {"sign_convention", "largest-magnitude loading positive"}},
                    output);
    };
  });

  DataOptions pp_data;
  std::string pp_keys = "alexander";
  auto* pca_proj = leaf_cmd(pca, "project", "Two-dimensional principal projection as CSV");
  pp_data.add_to(pca_proj);
  pca_proj->add_option("--keys", pp_keys, "Invariant kinds");
  add_output(pca_proj);
  pca_proj->final_callback([&] {
    action = [&] {
      auto d = ctx.load(pp_data);
      auto cloud = make_cloud(ctx, d, pp_keys, {}, "");
      auto scores = project2(cloud);
      std::string csv = "id,pc1,pc2\n";
      for (std::size_t i = 0; i < scores.size(); ++i)
        csv += csv::quote(cloud.row_ids()[i]) + "," + fmt(scores[i][0]) + "," + fmt(scores[i][1]) + "\n";
      ctx.emit(csv, output);
    };
  });

  DataOptions pl_data;
  std::string pl_keys = "alexander", pl_eps;
  auto* pca_local = leaf_cmd(pca, "local-dim", "Per-vertex dimension of a Ball Mapper graph");
  pl_data.add_to(pca_local);
  pca_local->add_option("--keys", pl_keys, "Invariant kinds");
  pca_local->add_option("--epsilon", pl_eps, "Ball radius")->required();
  pca_local->add_option("--threshold", pc_threshold, "Cumulative explained-variance threshold");
  add_output(pca_local);
  pca_local->final_callback([&] {
    action = [&] {
      auto d = ctx.load(pl_data);
      auto cloud = make_cloud(ctx, d, pl_keys, {}, "");
      auto g = build_graph(cloud, build_net(cloud, Epsilon::parse(pl_eps), ctx.threads), ctx.threads);
      auto dims = local_dimension(g, cloud, pc_threshold, ctx.threads);
      json verts = json::array();
      for (std::size_t v = 0; v < g.vertex_count(); ++v)
        verts.push_back({{"vertex", v}, {"landmark", cloud.row_ids()[g.landmarks[v]]}, {"size", g.covers[v].size()},
                         {"dimension", dims[v]}});
      ctx.emit_json({{"threshold", pc_threshold}, {"vertices", verts}}, output);
    };
  });

  // ---- kh ----
  auto* kh = app.add_subcommand("kh", "Khovanov homology analytics")->require_subcommand(1);
  DataOptions kw_data;
  std::string kw_view = "rational";
  auto* kh_width = leaf_cmd(kh, "width", "Width census per crossing number");
  kw_data.add_to(kh_width);
  kh_width->add_option("--view", kw_view, "rational, z2, z4 or integral");
  add_output(kh_width);
  kh_width->final_callback([&] {
    action = [&] {
      auto d = ctx.load(DataOptions{kw_data.input, kw_data.max_crossing, kw_data.crossing, "all", kw_data.mirrors});
      auto census = width_census(d, parse_alternating_mode(kw_data.group), parse_coefficient_view(kw_view));
      json rows = json::array();
      for (const auto& [c, widths] : census) {
        json w = json::object();
        std::size_t total = 0;
        for (const auto& [k, n] : widths) {
          w[std::to_string(k)] = n;
          total += n;
        }
        rows.push_back({{"crossing", c}, {"total", total}, {"widths", w}});
      }
      ctx.emit_json({{"view", kw_view}, {"group", kw_data.group}, {"rows", rows}}, output);
    };
  });

  DataOptions kd_data;
  auto* kh_diag = leaf_cmd(kh, "diag-stats", "Per-diagonal coefficient statistics");
  kd_data.add_to(kh_diag);
  add_output(kh_diag);
  kh_diag->final_callback([&] {
    action = [&] {
      auto d = ctx.load(kd_data);
      json rows = json::array();
      for (const auto& s : diagonal_profile(d, {}))
        rows.push_back({{"diagonal", s.diagonal}, {"knots", s.knots}, {"max_coefficient", s.max_coefficient},
                        {"mean_coefficient", s.mean_coefficient}, {"sum", s.sum}, {"nonzero", s.nonzero}});
      ctx.emit_json({{"rows", rows}}, output);
    };
  });

  DataOptions ks_data;
  std::string ks_conv = "agrees-with-s";
  auto* kh_span = leaf_cmd(kh, "sigma-span", "Signature inside the diagonal span; lists violations");
  ks_data.add_to(kh_span);
  kh_span->add_option("--convention", ks_conv, "agrees-with-s (d1 < sigma < dw) or opposite-to-s (d1 < -sigma < dw)");
  add_output(kh_span);
  kh_span->final_callback([&] {
    action = [&] {
      auto d = ctx.load(ks_data);
      auto rows = counterexample_scan(d, parse_signature_convention(ks_conv));
      json jr = json::array();
      std::vector<std::string> integral;
      for (const auto& r : rows) {
        jr.push_back(row_json(r));
        if (r.integral_counterexample()) integral.push_back(r.id);
      }
      ctx.emit_json({{"convention", ks_conv},
                     {"scanned", d.size()},
                     {"violations", rows.size()},
                     {"integral_counterexamples", integral},
                     {"rows", jr}},
                    output);
    };
  });

  DataOptions kss_data;
  bool kss_exact = false;
  std::string kss_view = "rational";
  auto* kh_ss = leaf_cmd(kh, "s-sigma", "Census of |s| against |sigma|");
  kss_data.add_to(kh_ss);
  kh_ss->add_flag("--exact", kss_exact, "Per exact crossing number instead of cumulative");
  kh_ss->add_option("--view", kss_view, "Width view for the distribution");
  add_output(kh_ss);
  kh_ss->final_callback([&] {
    action = [&] {
      auto d = ctx.load(DataOptions{kss_data.input, kss_data.max_crossing, kss_data.crossing, "all", kss_data.mirrors});
      auto c = s_sigma_census(d, parse_alternating_mode(kss_data.group), !kss_exact, parse_coefficient_view(kss_view));
      json rows = json::array();
      for (const auto& r : c.rows) {
        double pct = r.total() ? 100.0 * static_cast<double>(r.differ()) / static_cast<double>(r.total()) : 0.0;
        rows.push_back({{"crossing", r.crossing}, {"equal", r.equal}, {"s_greater", r.s_greater},
                        {"s_smaller", r.s_smaller}, {"total", r.total()}, {"differ", r.differ()},
                        {"differ_pct", std::round(pct * 100.0) / 100.0}});
      }
      json dist = json::array();
      for (const auto& [k, n] : c.distribution) dist.push_back({{"gap", k.first}, {"width", k.second}, {"count", n}});
      ctx.emit_json({{"cumulative", c.cumulative}, {"group", kss_data.group}, {"rows", rows}, {"distribution", dist}},
                    output);
    };
  });

  DataOptions kg_data;
  std::optional<int> kg_gap;
  std::string kg_conv = "agrees-with-s";
  auto* kh_scan = leaf_cmd(kh, "scan", "Sigma-span violations, or knots with a given |s|-|sigma| gap");
  kg_data.add_to(kh_scan);
  kh_scan->add_option("--gap", kg_gap, "List knots with |s| - |sigma| equal to this");
  kh_scan->add_option("--convention", kg_conv, "agrees-with-s or opposite-to-s");
  add_output(kh_scan);
  kh_scan->final_callback([&] {
    action = [&] {
      auto d = ctx.load(kg_data);
      auto conv = parse_signature_convention(kg_conv);
      auto rows = kg_gap ? gap_scan(d, *kg_gap, conv) : counterexample_scan(d, conv);
      json jr = json::array();
      for (const auto& r : rows) jr.push_back(row_json(r));
      json body{{"convention", kg_conv}, {"rows", jr}};
      if (kg_gap) body["gap"] = *kg_gap;
      ctx.emit_json(body, output);
    };
  });

  // ---- export ----
  std::string ex_bundle, ex_members = "full";
  auto* exp = leaf_cmd(&app, "export", "Validate a bundle and rewrite it canonically under a member policy");
  exp->add_option("--bundle", ex_bundle, "gbm/1 bundle")->required();
  exp->add_option("--members", ex_members, "full or capped:K");
  add_output(exp);
  exp->final_callback([&] {
    action = [&] {
      auto b = load_bundle(ctx, ex_bundle);
      auto policy = MemberPolicy::parse(ex_members);
      if (b.policy.cap && !policy.cap) throw ValidationError("cannot restore full membership from a capped bundle");
      if (policy.cap && (!b.policy.cap || *policy.cap < *b.policy.cap)) {
        for (auto& n : b.nodes)
          if (n.members.size() > *policy.cap) {
            n.members.resize(*policy.cap);
            n.truncated = true;
          }
        b.policy = policy;
      }
      ctx.emit(write_bundle(b), output);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (!action) return kUsage;
  ctx.threads = threads.value_or(0);
  try {
    if (ctx.threads == 0) ctx.threads = default_threads();
    if (leaf) ctx.config = config_of(leaf);
    action();
  } catch (...) {
    return exit_code_of(std::current_exception(), err);
  }
  return kOk;
}

}  // namespace knotscope::cli
