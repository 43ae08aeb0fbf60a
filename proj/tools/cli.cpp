#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "runlaw/error.hpp"
#include "runlaw/exactdist.hpp"
#include "runlaw/oracle.hpp"
#include "runlaw/waiting.hpp"
#include "verify.hpp"

namespace runlaw::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Json exact_json(const Rational& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Json probs_json(const std::vector<Rational>& probs) {
  Json out = Json::array();
  for (const auto& p : probs) out.push_back(to_string(p));
  return out;
}

Json probability_row(std::size_t n, std::size_t s, const Rational& q, int digits) {
  return Json{{"n", n}, {"s", s}, {"probability", format_scientific(q, digits)}, {"probability_exact", exact_json(q)}};
}

// A cell for CSV and table output: exact objects print as num/den.
std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    const auto den = v["den"].get<std::string>();
    return den == "1" ? v["num"].get<std::string>() : v["num"].get<std::string>() + "/" + den;
  }
  return v.dump();
}

void write_csv(const Json& rows, std::ostream& out) {
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [key, value] : rows.front().items()) {
    out << (first ? "" : ",") << key;
    first = false;
  }
  out << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      out << (first ? "" : ",") << cell(value);
      first = false;
    }
    out << '\n';
  }
}

void write_table(const Json& doc, std::ostream& out) {
  for (const auto& [key, value] : doc.items()) {
    if (key == "rows" || key == "schema") continue;
    out << "# " << key << ": " << (value.is_array() ? value.dump() : cell(value)) << '\n';
  }
  const Json& rows = doc["rows"];
  if (rows.empty()) return;
  std::vector<std::string> header;
  for (const auto& [key, value] : rows.front().items()) header.push_back(key);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    std::size_t c = 0;
    for (const auto& [key, value] : row.items()) {
      line.push_back(cell(value));
      width[c] = std::max(width[c], line.back().size());
      ++c;
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::ostringstream text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      text << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << line[c];
    }
    std::string row = text.str();
    row.erase(row.find_last_not_of(' ') + 1);
    out << row << '\n';
  };
  emit(header);
  for (const auto& line : cells) emit(line);
}

void emit(const Json& doc, Format format, std::ostream& out) {
  switch (format) {
    case Format::Json: out << doc.dump(2) << '\n'; break;
    case Format::Csv: write_csv(doc["rows"], out); break;
    case Format::Table: write_table(doc, out); break;
  }
}

Json header(const JobSpec& job, const char* command) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = command;
  if (!job.bounds.empty()) doc["pattern"] = format_pattern_spec(job.bounds);
  if (!job.probs.empty()) doc["probs"] = probs_json(job.probs);
  return doc;
}

int run_dist(const JobSpec& job, std::ostream& out) {
  const RunPattern pat = job.pattern();
  const PmfTable table = pmf(pat, job.n);
  const std::size_t lo = job.s_min.value_or(0);
  const std::size_t hi = std::min(job.s_max.value_or(table.s_max()), table.s_max());
  Json doc = header(job, "dist");
  doc["n"] = job.n;
  doc["s_max"] = table.s_max();
  doc["rows"] = Json::array();
  for (std::size_t s = lo; s <= hi; ++s) doc["rows"].push_back(probability_row(job.n, s, table.at(s), job.digits));
  emit(doc, job.format, out);
  return 0;
}

int run_wait(const JobSpec& job, std::ostream& out) {
  const RunPattern pat = job.pattern();
  std::size_t horizon = 0;
  bool reached = true;
  if (job.horizon) {
    horizon = *job.horizon;
  } else {
    const HorizonChoice choice = default_horizon(pat, job.r);
    horizon = choice.horizon;
    reached = choice.reached;
  }
  const auto h = waiting_pmf(pat, job.r, horizon);
  const WaitingMoments mom = waiting_moments(pat, job.r);

  Json doc = header(job, "wait");
  doc["r"] = job.r;
  doc["horizon"] = horizon;
  if (!job.horizon) doc["horizon_reached_tolerance"] = reached;
  doc["mean"] = format_scientific(mom.mean, job.digits);
  doc["mean_exact"] = exact_json(mom.mean);
  doc["variance"] = format_scientific(mom.variance, job.digits);
  doc["variance_exact"] = exact_json(mom.variance);
  Rational cumulative;
  doc["rows"] = Json::array();
  for (std::size_t s = 0; s <= horizon; ++s) {
    cumulative += h[s];
    Json row{{"r", job.r},
             {"s", s},
             {"probability", format_scientific(h[s], job.digits)},
             {"probability_exact", exact_json(h[s])},
             {"cumulative", format_scientific(cumulative, job.digits)}};
    doc["rows"].push_back(std::move(row));
  }
  emit(doc, job.format, out);
  return 0;
}

int run_simulate(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const RunPattern pat = job.pattern();
  Json doc = header(job, "simulate");
  doc["mode"] = job.waiting ? "waiting" : "count";
  if (job.waiting) {
    doc["r"] = job.r;
  } else {
    doc["n"] = job.n;
  }
  doc["samples"] = job.samples;
  doc["seed"] = job.seed;
  doc["rng"] = kRngAlgorithm;
  doc["shards"] = kSimulationShards;

  if (job.waiting && pat.bound(pat.m() - 1).bounded())
    err << "runlaw: note: the last run is bounded, so the count can fall; the simulated first time it reaches r "
           "is not the law of the pgf reported by 'wait'\n";

  const auto start = std::chrono::steady_clock::now();
  const SimulationResult sim = job.waiting ? simulate_waiting(pat, job.r, job.samples, job.seed)
                                           : simulate(pat, job.n, job.samples, job.seed);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "runlaw: simulated " << job.samples << " samples in " << std::fixed << std::setprecision(2) << seconds
      << " s\n";

  doc["mean"] = sim.mean;
  doc["mean_standard_error"] = sim.mean_standard_error;
  if (job.waiting) doc["censored"] = sim.censored;

  std::optional<PmfTable> exact;
  if (!job.waiting) exact = pmf(pat, job.n);
  doc["rows"] = Json::array();
  for (std::size_t s = 0; s < sim.counts.size(); ++s) {
    if (job.waiting && sim.counts[s] == 0) continue;
    Json row{{"s", s}, {"count", sim.counts[s]}, {"estimate", sim.estimate[s]}, {"standard_error", sim.standard_error[s]}};
    if (exact) row["exact"] = format_scientific(exact->at(s), job.digits);
    doc["rows"].push_back(std::move(row));
  }
  emit(doc, job.format, out);
  return 0;
}

int run_dna(const JobSpec& job, std::ostream& out) {
  const AlphabetMap alphabet(job.alphabet);
  std::vector<Rational> probs = job.probs;
  std::size_t records = 0;
  if (job.fasta) {
    const auto seqs = read_fasta_file(*job.fasta, alphabet,
                                      job.skip_unknown ? UnknownSymbols::Skip : UnknownSymbols::Reject);
    records = seqs.size();
    probs = estimate_probs(seqs, alphabet);
  }
  const FrequentPatternReport report =
      frequent_pattern_report(probs, job.literal, job.mode, job.n, job.min_support, alphabet);

  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = "dna";
  doc["literal"] = job.literal;
  doc["mode"] = job.mode == LiteralMode::Exactly ? "exactly" : job.mode == LiteralMode::AtLeast ? "at-least" : "at-most";
  doc["alphabet"] = alphabet.letters();
  doc["pattern"] = format_pattern_spec(report.bounds);
  doc["semantics"] = "maximal runs";
  doc["probs"] = probs_json(probs);
  doc["probs_source"] = job.fasta ? "fasta" : "cli";
  if (job.fasta) doc["records"] = records;
  doc["n"] = report.n;
  doc["min_support"] = report.min_support;
  doc["tail"] = format_scientific(report.tail, job.digits);
  doc["tail_exact"] = exact_json(report.tail);
  doc["rows"] = Json::array();
  const std::size_t lo = job.s_min.value_or(0);
  const std::size_t hi = std::min(job.s_max.value_or(report.table.s_max()), report.table.s_max());
  for (std::size_t s = lo; s <= hi; ++s)
    doc["rows"].push_back(probability_row(report.n, s, report.table.at(s), job.digits));
  emit(doc, job.format, out);
  return 0;
}

int run_verify(const JobSpec& job, std::ostream& out) {
  const GridSpec grid = job.grid == Grid::Full ? full_grid() : small_grid();
  const auto outcomes = run_verification(grid);
  bool passed = true;
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = "verify";
  doc["grid"] = job.grid == Grid::Full ? "full" : "small";
  doc["rows"] = Json::array();
  for (const auto& o : outcomes) {
    passed = passed && o.failures == 0;
    doc["rows"].push_back(Json{{"check", o.name},
                               {"cases", o.cases},
                               {"failures", o.failures},
                               {"status", o.failures == 0 ? "pass" : "FAIL"},
                               {"first_failure", o.first_failure}});
  }
  doc["passed"] = passed;
  emit(doc, job.format, out);
  return passed ? 0 : 1;
}

// Runs f, reporting core validation errors against the given flag.
template <class F>
auto flagged(const std::string& flag, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw UsageError("--format: expected json, csv or table, got '" + s + "'");
}

LiteralMode parse_mode(const std::string& s) {
  if (s == "exactly") return LiteralMode::Exactly;
  if (s == "at-least") return LiteralMode::AtLeast;
  if (s == "at-most") return LiteralMode::AtMost;
  throw UsageError("--mode: expected exactly, at-least or at-most, got '" + s + "'");
}

}  // namespace

JobSpec parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Exact distributions of unified run patterns in i.i.d. multi-state trials", "runlaw"};
  app.require_subcommand(1);

  std::string pattern, probs, format = "json", mode = "exactly", grid = "small";
  JobSpec job;

  auto add_pattern = [&](CLI::App* sub) {
    sub->add_option("--pattern", pattern, "run bounds, e.g. 1:1..1,2:2..2,3:1..inf (symbol:lower..upper)")
        ->required();
    sub->add_option("--probs", probs, "symbol probabilities as fractions or decimals, e.g. 1/10,0.3,1/5,2/5")
        ->required();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json, csv or table")->capture_default_str();
    sub->add_option("--digits", job.digits, "significant digits of decimal output")
        ->check(CLI::Range(1, 60))
        ->capture_default_str();
  };

  CLI::App* dist = app.add_subcommand("dist", "exact pmf of the occurrence count at length n");
  add_pattern(dist);
  dist->add_option("--n", job.n, "sequence length")->required();
  dist->add_option("--s-min", job.s_min, "first count to report");
  dist->add_option("--s-max", job.s_max, "last count to report");
  add_output(dist);

  CLI::App* wait = app.add_subcommand("wait", "waiting time until the r-th occurrence");
  add_pattern(wait);
  wait->add_option("--r", job.r, "occurrence index")->check(CLI::PositiveNumber)->capture_default_str();
  wait->add_option("--horizon", job.horizon, "last time to tabulate (default: cumulative mass 1 - 1e-12)");
  add_output(wait);

  CLI::App* sim = app.add_subcommand("simulate", "seeded Monte Carlo estimate of the count or waiting-time law");
  add_pattern(sim);
  auto* sim_n = sim->add_option("--n", job.n, "sequence length (count mode)");
  auto* sim_r = sim->add_option("--r", job.r, "simulate the first time the count reaches r")
                    ->check(CLI::PositiveNumber);
  sim_n->excludes(sim_r);
  sim->add_option("--samples", job.samples, "number of samples")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--seed", job.seed, "random seed")->capture_default_str();
  add_output(sim);

  CLI::App* verify = app.add_subcommand("verify", "cross-module identity suite; exits 1 on any violation");
  verify->add_option("--grid", grid, "small or full")->check(CLI::IsMember({"small", "full"}))->capture_default_str();
  add_output(verify);

  CLI::App* dna = app.add_subcommand("dna", "frequent-pattern probabilities for a nucleotide literal");
  auto* dna_fasta = dna->add_option("--fasta", job.fasta, "estimate symbol probabilities from a FASTA file");
  auto* dna_probs = dna->add_option("--probs", probs, "symbol probabilities in alphabet order");
  dna_fasta->excludes(dna_probs);
  dna->add_option("--pattern", job.literal, "pattern literal, e.g. ACCGT")->required();
  dna->add_option("--mode", mode, "exactly, at-least or at-most")->capture_default_str();
  dna->add_option("--n", job.n, "sequence length")->required();
  dna->add_option("--min-support", job.min_support, "report P(X >= min-support)")->capture_default_str();
  dna->add_option("--alphabet", job.alphabet, "ordered alphabet; letter i is symbol i")->capture_default_str();
  dna->add_flag("--skip-unknown", job.skip_unknown, "drop FASTA characters outside the alphabet");
  dna->add_option("--s-min", job.s_min, "first count to report");
  dna->add_option("--s-max", job.s_max, "last count to report");
  add_output(dna);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    job.command = Command::Help;
    const CLI::App* target = &app;
    for (const CLI::App* s : app.get_subcommands()) target = s;
    job.help_text = target->help();
    return job;
  } catch (const CLI::CallForAllHelp&) {
    job.command = Command::Help;
    job.help_text = app.help("", CLI::AppFormatMode::All);
    return job;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  job.format = parse_format(format);
  if (dist->parsed()) job.command = Command::Dist;
  if (wait->parsed()) job.command = Command::Wait;
  if (sim->parsed()) job.command = Command::Simulate;
  if (verify->parsed()) job.command = Command::Verify;
  if (dna->parsed()) job.command = Command::Dna;

  if (job.command == Command::Verify) {
    job.grid = grid == "full" ? Grid::Full : Grid::Small;
    return job;
  }

  if (job.command == Command::Dna) {
    job.mode = parse_mode(mode);
    if (!job.fasta && probs.empty()) throw UsageError("dna: one of --fasta or --probs is required");
    const AlphabetMap alphabet = flagged("--alphabet", [&] { return AlphabetMap(job.alphabet); });
    flagged("--pattern", [&] { return compile_literal(job.literal, alphabet, job.mode); });
    if (!job.fasta) {
      job.probs = flagged("--probs", [&] { return parse_rational_list(probs); });
      if (job.probs.size() != alphabet.size())
        throw UsageError("--probs: expected " + std::to_string(alphabet.size()) + " values for alphabet " +
                         alphabet.letters() + ", got " + std::to_string(job.probs.size()));
      Rational total;
      for (const auto& p : job.probs) total += p;
      if (total != 1) throw UsageError("--probs: probabilities sum to " + to_string(total) + ", not 1");
    }
    return job;
  }

  job.pattern_text = pattern;
  job.bounds = flagged("--pattern", [&] { return parse_pattern_spec(pattern); });
  job.probs = flagged("--probs", [&] { return parse_rational_list(probs); });
  if (job.probs.size() != job.bounds.size())
    throw UsageError("--probs: pattern has " + std::to_string(job.bounds.size()) + " symbols but " +
                     std::to_string(job.probs.size()) + " probabilities were given");
  flagged("--probs", [&] { return job.pattern(); });

  if (job.command == Command::Simulate) {
    job.waiting = sim_r->count() > 0;
    if (!job.waiting && sim_n->count() == 0) throw UsageError("simulate: one of --n or --r is required");
    if (job.waiting) flagged("--probs", [&] { return psi(job.pattern(), job.r); });
  }
  if (job.command == Command::Wait) flagged("--probs", [&] { return psi(job.pattern(), job.r); });
  if (job.s_min && job.s_max && *job.s_min > *job.s_max) throw UsageError("--s-min: exceeds --s-max");
  return job;
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  switch (job.command) {
    case Command::Help: out << job.help_text; return 0;
    case Command::Dist: return run_dist(job, out);
    case Command::Wait: return run_wait(job, out);
    case Command::Simulate: return run_simulate(job, out, err);
    case Command::Verify: return run_verify(job, out);
    case Command::Dna: return run_dna(job, out);
  }
  return 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobSpec job;
  try {
    job = parse_args(args);
  } catch (const UsageError& e) {
    err << "runlaw: usage error: " << e.what() << "\nrun 'runlaw --help' for usage\n";
    return 2;
  }
  try {
    if (!job.bounds.empty())
      for (const auto& w : job.pattern().warnings()) err << "runlaw: warning: " << w << '\n';
    return run(job, out, err);
  } catch (const std::exception& e) {
    err << "runlaw: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace runlaw::cli
