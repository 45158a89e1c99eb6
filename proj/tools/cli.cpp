#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "trimani/annealer.hpp"
#include "trimani/complex.hpp"
#include "trimani/enumerator.hpp"
#include "trimani/facevec.hpp"
#include "trimani/gamma_bounds.hpp"
#include "trimani/homology.hpp"
#include "trimani/io.hpp"
#include "trimani/moves.hpp"
#include "trimani/surgery.hpp"

namespace trimani::cli {

namespace {

std::vector<Vertex> parse_labels(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(static_cast<Vertex>(v));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad vertex label '" + item + "' in '" + text + "'");
    }
  }
  if (out.empty() || out.size() > 4) throw Error(Errc::ParseError, "expected 1 to 4 labels: '" + text + "'");
  return out;
}

Simplex parse_simplex(const std::string& text) { return Simplex(std::span<const Vertex>(parse_labels(text))); }

Facet parse_facet(const std::string& text) {
  const auto v = parse_labels(text);
  if (v.size() != 4) throw Error(Errc::ParseError, "a facet needs 4 labels: '" + text + "'");
  return sorted_facet({v[0], v[1], v[2], v[3]});
}

/// "a1:b1,a2:b2,a3:b3,a4:b4"
FacetMatching parse_matching(const std::string& text) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(Errc::ParseError, "matching entry without ':': '" + item + "'");
    const auto a = parse_labels(item.substr(0, colon));
    const auto b = parse_labels(item.substr(colon + 1));
    if (a.size() != 1 || b.size() != 1) throw Error(Errc::ParseError, "bad matching entry '" + item + "'");
    pairs.emplace_back(a[0], b[0]);
  }
  if (pairs.size() != 4) throw Error(Errc::ParseError, "a matching needs 4 pairs: '" + text + "'");
  std::sort(pairs.begin(), pairs.end());
  FacetMatching m;
  for (int i = 0; i < 4; ++i) {
    m.facet_a[i] = pairs[i].first;
    m.pairing[i] = pairs[i].second;
  }
  m.facet_b = sorted_facet(m.pairing);
  return m;
}

std::string join(std::span<const Vertex> vs, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(vs[i]);
  return s;
}

std::string tuple(const std::vector<Integer>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].str();
  return s + ")";
}

std::string tuple(const FVector3& f) {
  return "(" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + "," +
         std::to_string(f[3]) + ")";
}

/// mu has denominator 1 or 2.
std::string decimal(const Rational& r) {
  const Rational r2 = r * 2;
  const Integer twice = numerator(r2) / denominator(r2);
  const Integer mag = abs(twice);
  std::string s = (twice < 0 ? "-" : "") + Integer(mag / 2).str();
  if (mag % 2 != 0) s += ".5";
  return s;
}

void emit_complex(const Complex& k, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_facets(out, k);
  } else {
    write_facet_file(path, k);
  }
}

// One move per line: "<kind> <A> <B>", labels comma separated.
std::string format_move(const MoveDescriptor& m) {
  return std::to_string(m.kind) + " " + join(std::span<const Vertex>(m.face_a.begin(), m.face_a.size())) + " " +
         join(std::span<const Vertex>(m.replacement_b.begin(), m.replacement_b.size()));
}

std::vector<MoveDescriptor> read_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::vector<MoveDescriptor> moves;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream s(line);
    std::string kind, a, b, extra;
    if (!(s >> kind)) continue;
    if (!(s >> a >> b) || (s >> extra) || kind.size() != 1 || kind[0] < '0' || kind[0] > '3')
      throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": expected '<kind> <A> <B>'");
    moves.push_back({kind[0] - '0', parse_simplex(a), parse_simplex(b)});
  }
  return moves;
}

MoveDescriptor resolve_move(const Complex& k, int kind, const Simplex& a, const std::optional<Simplex>& b) {
  if (b) return {kind, a, *b};
  if (kind == 0) return {0, a, Simplex{k.vertex_count() + 1}};
  if (!k.has_face(a)) throw Error(Errc::IllegalMove, a.to_string() + " is not a face");
  const auto verts = k.link(a).vertices();
  if (verts.size() > 4) throw Error(Errc::IllegalMove, "link of " + a.to_string() + " has too many vertices");
  return {kind, a, Simplex(std::span<const Vertex>(verts))};
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int jobs, F&& fn) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) slots[i] = fn(i);
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (int i = 1; i < std::max(jobs, 1); ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for triangulated closed 3-manifolds", "trimani_cli"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  std::string file, file2, output;

  auto* validate_cmd = app.add_subcommand("validate", "Check that a facet file is a closed 3-manifold");
  validate_cmd->add_option("file", file, "Facet file")->required();

  auto* stats_cmd = app.add_subcommand("stats", "Face numbers, mu statistic and lower bounds");
  stats_cmd->add_option("file", file, "Facet file")->required();

  auto* homology_cmd = app.add_subcommand("homology", "Integral homology");
  homology_cmd->add_option("file", file, "Facet file")->required();

  auto* canon_cmd = app.add_subcommand("canon", "Canonical relabeling and digest");
  canon_cmd->add_option("file", file, "Facet file")->required();
  canon_cmd->add_option("-o,--output", output, "Output facet file");

  int kind = -1;
  std::string face, with, weights_text = "1,1,1,1";
  std::uint64_t seed = 0, random_count = 0;
  bool list_moves = false;
  auto* flip_cmd = app.add_subcommand("flip", "Apply bistellar moves");
  flip_cmd->add_option("file", file, "Facet file")->required();
  flip_cmd->add_option("--kind", kind, "Move kind 0..3")->check(CLI::Range(0, 3));
  flip_cmd->add_option("--face", face, "Face A, e.g. 1,2,3");
  flip_cmd->add_option("--with", with, "Replacement B (default: the link of A)");
  flip_cmd->add_option("--random", random_count, "Apply this many weighted random moves");
  flip_cmd->add_option("--weights", weights_text, "Kind weights w0,w1,w2,w3 (integers or inf)");
  flip_cmd->add_option("--seed", seed, "Random seed");
  flip_cmd->add_flag("--list", list_moves, "List the legal moves");
  flip_cmd->add_option("-o,--output", output, "Output facet file");

  SearchConfig cfg;
  int seeds = 1, jobs = 1;
  std::optional<int> floor_offset, best_known;
  std::string heat_w, mix_w, cool_w, out_dir;
  auto* anneal_cmd = app.add_subcommand("anneal", "Simulated annealing with bistellar moves");
  anneal_cmd->add_option("file", file, "Start facet file")->required();
  anneal_cmd->add_option("--seed", cfg.seed, "First seed");
  anneal_cmd->add_option("--seeds", seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  anneal_cmd->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  anneal_cmd->add_option("--rounds", cfg.rounds, "Mix/cool rounds")->check(CLI::PositiveNumber);
  anneal_cmd->add_option("--mix-moves", cfg.mix_moves, "Moves per mixing stage");
  anneal_cmd->add_option("--cool-moves", cfg.cool_moves, "Moves per cooling stage");
  anneal_cmd->add_option("--heat", heat_w, "Heating weights");
  anneal_cmd->add_option("--mix", mix_w, "Mixing weights");
  anneal_cmd->add_option("--cool", cool_w, "Cooling weights");
  anneal_cmd->add_option("--floor", floor_offset, "Keep f0 >= best known f0 + r");
  anneal_cmd->add_option("--best-known-f0", best_known, "Reference f0 for --floor");
  anneal_cmd->add_option("--out", out_dir, "Directory for the best facet files");

  EnumerationTask task;
  std::string f1_range, prefix_file, rules_text = "all", reading_text = "simplices";
  std::optional<std::int64_t> g2_cap;
  int split_depth = 2;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Census of candidate g2-irreducible triangulations");
  enumerate_cmd->add_option("--f0", task.f0, "Number of vertices")->required();
  enumerate_cmd->add_option("--f1", f1_range, "Edge range LO:HI");
  enumerate_cmd->add_option("--g2-cap", g2_cap, "Only g2 <= cap (also applies the mu filter)");
  enumerate_cmd->add_option("--prefix", prefix_file, "Facet file holding a search prefix");
  enumerate_cmd->add_option("--rules", rules_text, "Pruning rules, e.g. all, none, L10_1,L10_7");
  enumerate_cmd->add_option("--reading", reading_text, "simplices or vertices")
      ->check(CLI::IsMember({"simplices", "vertices"}));
  enumerate_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--split-depth", split_depth, "Prefix depth for --jobs");
  enumerate_cmd->add_option("--out", out_dir, "Directory for the record facet files");

  std::string matching, facet_text;
  int min_distance = 3;
  std::size_t limit = 16;
  auto* surgery_cmd = app.add_subcommand("surgery", "Subdivision, handles, connected sums, missing facets");
  surgery_cmd->require_subcommand(1);
  auto* sum_cmd = surgery_cmd->add_subcommand("sum", "Connected sum of two complexes");
  sum_cmd->add_option("file", file, "First facet file")->required();
  sum_cmd->add_option("file2", file2, "Second facet file")->required();
  sum_cmd->add_option("--match", matching, "a1:b1,a2:b2,a3:b3,a4:b4")->required();
  sum_cmd->add_option("-o,--output", output, "Output facet file");
  auto* handle_cmd = surgery_cmd->add_subcommand("handle", "Identify two facets of one complex");
  handle_cmd->add_option("file", file, "Facet file")->required();
  handle_cmd->add_option("--match", matching, "a1:b1,a2:b2,a3:b3,a4:b4")->required();
  handle_cmd->add_option("-o,--output", output, "Output facet file");
  auto* subdivide_cmd = surgery_cmd->add_subcommand("subdivide", "Stellar subdivision of a facet");
  subdivide_cmd->add_option("file", file, "Facet file")->required();
  subdivide_cmd->add_option("--facet", facet_text, "a,b,c,d")->required();
  subdivide_cmd->add_option("-o,--output", output, "Output facet file");
  auto* missing_cmd = surgery_cmd->add_subcommand("missing", "List missing facets");
  missing_cmd->add_option("file", file, "Facet file")->required();
  auto* far_cmd = surgery_cmd->add_subcommand("far", "Facet pairs admissible for a handle");
  far_cmd->add_option("file", file, "Facet file")->required();
  far_cmd->add_option("--distance", min_distance, "Minimum cross distance");
  far_cmd->add_option("--limit", limit, "Maximum number of pairs");
  auto* split_cmd = surgery_cmd->add_subcommand("split", "Cut along a missing facet");
  split_cmd->add_option("file", file, "Facet file")->required();
  split_cmd->add_option("--facet", facet_text, "a,b,c,d")->required();
  split_cmd->add_option("--out", out_dir, "Directory for the pieces");

  int d = 3, kmax = 30;
  std::optional<std::int64_t> pairs_cap;
  std::optional<int> tight_m;
  auto* bounds_cmd = app.add_subcommand("bounds", "Vertex and g2 lower bounds as TSV");
  bounds_cmd->add_option("--d", d, "Dimension")->check(CLI::Range(1, kMaxAlgebraDimension));
  bounds_cmd->add_option("--kmax", kmax, "Largest beta1")->check(CLI::NonNegativeNumber);
  bounds_cmd->add_option("--pairs", pairs_cap, "Instead list admissible (f0,f1) pairs up to this g2 cap");
  bounds_cmd->add_option("--tight", tight_m, "Instead list tight-neighborly parameter rows up to m");

  std::string journal, key, name, path_file, path_out;
  std::uint64_t search_steps = 0;
  int attempts = 20;
  auto* gamma_cmd = app.add_subcommand("gamma", "Gamma bound certificates and the bounds journal");
  gamma_cmd->require_subcommand(1);
  auto* certify_cmd = gamma_cmd->add_subcommand("certify", "Certify a Gamma* upper bound");
  certify_cmd->add_option("file", file, "Facet file")->required();
  certify_cmd->add_option("--path", path_file, "Move path to a neighborly triangulation");
  certify_cmd->add_option("--search", search_steps, "Search a path with at most this many moves per attempt");
  certify_cmd->add_option("--attempts", attempts, "Path search attempts");
  certify_cmd->add_option("--seed", seed, "Random seed for the path search");
  certify_cmd->add_option("--path-out", path_out, "Write the found path here");
  auto* record_cmd = gamma_cmd->add_subcommand("record", "Add a witness to the journal");
  record_cmd->add_option("file", file, "Facet file")->required();
  record_cmd->add_option("--journal", journal, "Journal file")->required();
  record_cmd->add_option("--name", name, "Manifold name");
  auto* query_cmd = gamma_cmd->add_subcommand("query", "Look up bounds by homology key");
  query_cmd->add_option("--journal", journal, "Journal file")->required();
  query_cmd->add_option("--key", key, "Homology key, e.g. Z,Z_2,0,Z")->required();
  query_cmd->add_option("--name", name, "Manifold name");
  auto* list_cmd = gamma_cmd->add_subcommand("list", "All journal entries as TSV");
  list_cmd->add_option("--journal", journal, "Journal file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate_cmd->parsed()) {
      const Complex k = read_facet_file(file);
      const auto report = validate(k);
      if (!report.is_manifold()) {
        err << "not a closed 3-manifold: " << report.first_violation.value_or("unknown") << '\n';
        return 1;
      }
      out << "ok f0=" << k.vertex_count() << " facets=" << k.facet_count() << '\n';
    } else if (stats_cmd->parsed()) {
      const Complex k = read_facet_file(file);
      require_manifold(k, file);
      const auto f = f_from_complex(k);
      out << "f=" << tuple(k.f_vector()) << " g=" << tuple(g_vector(f).entries) << '\n';
      out << "h=" << tuple(h_vector(f).entries) << '\n';
      out << "neighborly=" << (is_neighborly(k) ? "yes" : "no") << '\n';
      out << "mu=" << decimal(mu_statistic(f)) << (passes_mu_filter(f) ? "" : " not g2-irreducible") << '\n';
      const std::int64_t b1 = std::max(integral_homology(k).groups[1].betti, betti_mod_p(k, 2)[1]);
      out << "beta1=" << b1 << " g2_floor=" << g2_lower_bound(3, b1) << " f0_floor=" << min_vertices(3, b1)
          << '\n';
    } else if (homology_cmd->parsed()) {
      out << integral_homology(read_facet_file(file)).to_string() << '\n';
    } else if (canon_cmd->parsed()) {
      const auto c = canonicalize(read_facet_file(file));
      const Complex k = Complex::from_facets(c.facets);
      if (output.empty()) out << "# digest=" << c.digest << '\n';
      emit_complex(k, output, out);
    } else if (flip_cmd->parsed()) {
      const Complex k = read_facet_file(file);
      if (list_moves) {
        for (const auto& m : legal_moves(k)) out << format_move(m) << '\n';
        return 0;
      }
      if (random_count > 0) {
        FlipEngine engine(k);
        Rng rng(seed);
        const auto w = parse_weights(weights_text);
        for (std::uint64_t i = 0; i < random_count; ++i) {
          const auto m = engine.sample(w, rng);
          if (!m) {
            err << "no weighted move available after " << i << " moves\n";
            break;
          }
          engine.apply(*m);
        }
        emit_complex(engine.snapshot(), output, out);
        return 0;
      }
      if (kind < 0 || face.empty()) throw CLI::RequiredError("--kind and --face (or --random, --list)");
      const auto m = resolve_move(k, kind, parse_simplex(face),
                                  with.empty() ? std::nullopt : std::optional<Simplex>(parse_simplex(with)));
      emit_complex(apply(k, m), output, out);
    } else if (anneal_cmd->parsed()) {
      const Complex k = read_facet_file(file);
      require_manifold(k, file);
      if (!heat_w.empty()) cfg.heat_weights = parse_weights(heat_w);
      if (!mix_w.empty()) cfg.mix_weights = parse_weights(mix_w);
      if (!cool_w.empty()) cfg.cool_weights = parse_weights(cool_w);
      cfg.f0_floor_offset = floor_offset;
      cfg.best_known_f0 = best_known;
      const auto results = parallel_map<SearchResult>(static_cast<std::size_t>(seeds), jobs, [&](std::size_t i) {
        SearchConfig c = cfg;
        c.seed = cfg.seed + i;
        return anneal(k, c);
      });
      if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
      out << "row\tseed\tround\tstage\tf0\tf1\tmoves\tstalled\tdigest\n";
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const auto s = cfg.seed + i;
        auto stage = [&](int round, const char* what, const StageTrace& t) {
          out << "trace\t" << s << '\t' << round << '\t' << what << '\t' << t.f_after[0] << '\t' << t.f_after[1]
              << '\t' << t.moves << '\t' << (t.stalled ? 1 : 0) << "\t\n";
        };
        stage(0, "heat", r.heat);
        for (const auto& t : r.trace) {
          stage(t.round, "mix", t.mix);
          stage(t.round, "cool", t.cool);
        }
        const auto f = r.best_f(k);
        const std::string digest = r.best.empty() ? canonicalize(k).digest : r.best.back().digest;
        out << "best\t" << s << "\t\t\t" << f[0] << '\t' << f[1] << "\t\t\t" << digest << '\n';
        if (!out_dir.empty() && !r.best.empty()) {
          write_facet_file(std::filesystem::path(out_dir) / ("seed" + std::to_string(s) + "_" + digest + ".tri"),
                           r.best.back().complex());
        }
      }
    } else if (enumerate_cmd->parsed()) {
      task.f1_lo = 0;
      task.f1_hi = std::numeric_limits<std::int32_t>::max();
      if (!f1_range.empty()) {
        const auto colon = f1_range.find(':');
        try {
          if (colon == std::string::npos) {
            task.f1_lo = task.f1_hi = std::stoll(f1_range);
          } else {
            task.f1_lo = std::stoll(f1_range.substr(0, colon));
            task.f1_hi = std::stoll(f1_range.substr(colon + 1));
          }
        } catch (const std::exception&) {
          throw CLI::ValidationError("--f1", "expected LO:HI, got '" + f1_range + "'");
        }
      } else if (!g2_cap) {
        throw CLI::RequiredError("--f1 or --g2-cap");
      }
      task.g2_cap = g2_cap;
      task.rules = RuleSet::parse(rules_text);
      task.reading = reading_text == "vertices" ? IntersectionReading::Vertices : IntersectionReading::Simplices;
      if (!prefix_file.empty()) {
        const Complex p = read_facet_file(prefix_file);
        task.prefix = std::vector<Facet>(p.facets().begin(), p.facets().end());
      }
      const auto result = task.prefix || jobs <= 1 ? enumerate(task) : enumerate_parallel(task, jobs, split_depth);
      if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
      out << "digest\tf0\tf1\tg2\thomology\tmissing_facets\n";
      for (const auto& r : result.records) {
        out << r.digest << '\t' << r.f[0] << '\t' << r.f[1] << '\t' << r.g[2] << '\t' << r.homology.to_string()
            << '\t' << r.missing_facet_count << '\n';
        if (!out_dir.empty()) write_facet_file(std::filesystem::path(out_dir) / (r.digest + ".tri"), r.complex());
      }
      err << "task " << task.id() << " nodes=" << result.stats.nodes << " records=" << result.stats.records
          << " without_missing_facets=" << result.stats.records_without_missing_facets << '\n';
    } else if (sum_cmd->parsed()) {
      emit_complex(connected_sum(read_facet_file(file), read_facet_file(file2), parse_matching(matching)), output,
                   out);
    } else if (handle_cmd->parsed()) {
      emit_complex(add_handle(read_facet_file(file), parse_matching(matching)), output, out);
    } else if (subdivide_cmd->parsed()) {
      emit_complex(subdivide(read_facet_file(file), parse_facet(facet_text)), output, out);
    } else if (missing_cmd->parsed()) {
      for (const auto& f : missing_facets(read_facet_file(file))) out << join(f) << '\n';
    } else if (far_cmd->parsed()) {
      for (const auto& [a, b] : far_facet_pairs(read_facet_file(file), min_distance, limit))
        out << join(a) << '\t' << join(b) << '\n';
    } else if (split_cmd->parsed()) {
      const auto r = split_at_missing_facet(read_facet_file(file), parse_facet(facet_text));
      out << (r.separating ? "separating" : "handle") << '\n';
      for (std::size_t i = 0; i < r.pieces.size(); ++i) {
        const auto& piece = r.pieces[i];
        out << "piece " << i + 1 << " f=" << tuple(piece.f_vector()) << " homology="
            << integral_homology(piece).to_string() << '\n';
        if (!out_dir.empty()) {
          std::filesystem::create_directories(out_dir);
          write_facet_file(std::filesystem::path(out_dir) / ("piece" + std::to_string(i + 1) + ".tri"), piece);
        }
      }
    } else if (bounds_cmd->parsed()) {
      if (pairs_cap) {
        out << "f0\tf1\tg2\n";
        for (const auto& [f0, f1] : admissible_pairs(*pairs_cap))
          out << f0 << '\t' << f1 << '\t' << f1 - 4 * f0 + 10 << '\n';
      } else if (tight_m) {
        out << "f0\tk\n";
        for (const auto& row : tight_neighborly_rows(*tight_m)) out << row.f0 << '\t' << row.k << '\n';
      } else {
        out << "beta1\tmin_f0\tg2_lower\n";
        for (int k = 0; k <= kmax; ++k)
          out << k << '\t' << min_vertices(d, k) << '\t' << g2_lower_bound(d, k) << '\n';
      }
    } else if (certify_cmd->parsed()) {
      const Complex k = read_facet_file(file);
      require_manifold(k, file);
      out << "neighborly=" << (is_neighborly(k) ? "yes" : "no") << '\n';
      out << "gamma_lower=" << gamma_lower(k, 2) << '\n';
      std::optional<Integer> bound;
      if (is_neighborly(k)) {
        for (Vertex v = 1; v <= k.vertex_count(); ++v) {
          if (const auto c = hamiltonian_cycle_in_link(k, v)) {
            out << "hamiltonian_link=" << v << " cycle=" << join(*c) << '\n';
            break;
          }
        }
        bound = gamma_star_upper_direct(k);
      }
      if (!bound && !path_file.empty()) bound = gamma_star_upper_via_path(k, read_path(path_file));
      if (!bound && search_steps > 0) {
        Rng rng(seed);
        for (int a = 0; a < attempts && !bound; ++a) {
          const auto path = find_neighborly_path(k, search_steps, rng);
          if (!path) continue;
          try {
            bound = gamma_star_upper_via_path(k, *path);
          } catch (const Error& e) {
            if (e.code() != Errc::EndpointNotCertified) throw;
            continue;
          }
          out << "path_moves=" << path->size() << '\n';
          if (!path_out.empty()) {
            std::ofstream p(path_out);
            for (const auto& m : *path) p << format_move(m) << '\n';
          }
        }
      }
      out << "gamma_star_upper=" << (bound ? bound->str() : "none") << '\n';
    } else if (record_cmd->parsed()) {
      const Complex k = read_facet_file(file);
      require_manifold(k, file);
      auto ledger = GammaLedger::load(std::filesystem::path(journal));
      const auto u = witness_update(k, name);
      ledger.record(u, journal);
      out << u.to_line() << '\n';
    } else if (query_cmd->parsed()) {
      const auto ledger = GammaLedger::load(std::filesystem::path(journal));
      const auto e = ledger.query(key, name);
      if (!e) {
        out << "absent\n";
        return 0;
      }
      auto opt = [](const std::optional<Integer>& x) { return x ? x->str() : std::string("-"); };
      out << "key=" << e->key << " name=" << e->name << " gamma_lower=" << opt(e->gamma_lower)
          << " gamma_upper=" << opt(e->gamma_upper) << " gamma_star_upper=" << opt(e->gamma_star_upper) << '\n';
      for (const auto& m : e->minimal) out << "minimal g=" << tuple(m.g.entries) << " witness=" << m.digest << '\n';
      out << "witnesses=" << e->witnesses.size() << '\n';
    } else if (list_cmd->parsed()) {
      const auto ledger = GammaLedger::load(std::filesystem::path(journal));
      auto opt = [](const std::optional<Integer>& x) { return x ? x->str() : std::string(); };
      out << "key\tname\tgamma_lower\tgamma_upper\tgamma_star_upper\twitnesses\n";
      for (const auto& e : ledger.entries()) {
        out << e.key << '\t' << e.name << '\t' << opt(e.gamma_lower) << '\t' << opt(e.gamma_upper) << '\t'
            << opt(e.gamma_star_upper) << '\t' << e.witnesses.size() << '\n';
      }
    }
  } catch (const CLI::Error& e) {
    err << "usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace trimani::cli
