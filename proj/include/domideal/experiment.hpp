#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "domideal/dominance.hpp"
#include "domideal/json_io.hpp"
#include "domideal/random_models.hpp"

namespace domideal {

enum class ModelKind { Basic, Graded, FixedCount };

/// Where the probabilities of a basic or graded sweep come from.
enum class GridSource { BasicGrid, GradedGrid, Explicit };

enum class OutputFormat { Csv, Jsonl, Legacy };

inline const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Basic: return "basic";
    case ModelKind::Graded: return "graded";
    case ModelKind::FixedCount: return "fixed-count";
  }
  return "?";
}

inline ModelKind parse_model_kind(std::string_view s) {
  if (s == "basic") return ModelKind::Basic;
  if (s == "graded") return ModelKind::Graded;
  if (s == "fixed-count") return ModelKind::FixedCount;
  throw std::invalid_argument("domideal: unknown model '" + std::string(s) + "' (basic, graded, fixed-count)");
}

inline const char* to_string(GridSource g) {
  switch (g) {
    case GridSource::BasicGrid: return "basic-grid";
    case GridSource::GradedGrid: return "graded-grid";
    case GridSource::Explicit: return "explicit";
  }
  return "?";
}

inline GridSource parse_grid_source(std::string_view s) {
  if (s == "basic-grid") return GridSource::BasicGrid;
  if (s == "graded-grid") return GridSource::GradedGrid;
  if (s == "explicit") return GridSource::Explicit;
  throw std::invalid_argument("domideal: unknown grid source '" + std::string(s) +
                              "' (basic-grid, graded-grid, explicit)");
}

inline const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Jsonl: return "jsonl";
    case OutputFormat::Legacy: return "legacy";
  }
  return "?";
}

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "jsonl") return OutputFormat::Jsonl;
  if (s == "legacy") return OutputFormat::Legacy;
  throw std::invalid_argument("domideal: unknown output format '" + std::string(s) + "' (csv, jsonl, legacy)");
}

/// Environment variable consulted for the default experiment seed.
constexpr const char* kSeedEnvVar = "DOMIDEAL_SEED";

inline std::uint64_t default_seed() {
  if (const char* s = std::getenv(kSeedEnvVar); s && *s) {
    std::uint64_t v{};
    const std::string_view sv(s);
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || ptr != sv.data() + sv.size())
      throw std::invalid_argument(std::string("domideal: ") + kSeedEnvVar + "='" + s + "' is not an unsigned integer");
    return v;
  }
  return 0;
}

struct ExperimentConfig {
  ModelKind model = ModelKind::Basic;
  std::vector<std::size_t> nvars{3};
  std::vector<std::size_t> degrees;
  GridSource source = GridSource::BasicGrid;
  std::vector<double> probabilities;        // GridSource::Explicit
  std::vector<std::uint64_t> generator_counts;  // fixed-count only
  std::size_t sample_size = 50;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Csv;
  std::string output;  // empty: caller-provided stream
  unsigned threads = 0;  // 0: hardware concurrency
  double point_timeout_seconds = 0;  // 0: no limit
  // Points whose expected raw generator count exceeds this are skipped.
  double max_expected_generators = 5e6;

  void validate() const {
    if (sample_size < 1) throw std::invalid_argument("domideal: sample_size must be >= 1");
    if (nvars.empty() || degrees.empty()) throw std::invalid_argument("domideal: experiment grid is empty");
    for (auto n : nvars)
      if (n < 1) throw std::invalid_argument("domideal: experiment needs n >= 1");
    for (auto d : degrees)
      if (d < 1) throw std::invalid_argument("domideal: experiment needs degrees >= 1");
    if (model == ModelKind::FixedCount) {
      if (generator_counts.empty()) throw std::invalid_argument("domideal: fixed-count experiment needs generator counts");
    } else if (source == GridSource::Explicit) {
      if (probabilities.empty()) throw std::invalid_argument("domideal: explicit grid needs probabilities");
      for (double p : probabilities)
        if (!(p >= 0 && p <= 1)) throw std::invalid_argument("domideal: probabilities must lie in [0,1]");
    } else {
      for (auto n : nvars)
        if (n < 2) throw std::invalid_argument("domideal: generated probability grids need n >= 2");
      for (auto d : degrees)
        if (d < 2) throw std::invalid_argument("domideal: generated probability grids need d >= 2");
    }
  }

  std::size_t max_nvars() const { return *std::max_element(nvars.begin(), nvars.end()); }
};

/// One grid point of a sweep: basic/graded points carry p (the top-degree
/// slot for graded), fixed-count points carry g.
struct GridPoint {
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<double> p;
  std::optional<std::uint64_t> g;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct ExperimentRow {
  ModelKind model = ModelKind::Basic;
  GridPoint point;
  std::size_t sample_size = 0;
  std::uint64_t dominant_count = 0;
  std::vector<std::uint64_t> histogram;  // n + 1 entries, index = number of generators
  std::uint64_t seed = 0;                // samples use SeedSpec{seed, 0 .. sample_size-1}
  bool skipped = false;
  std::string skip_reason;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

/// Points in output order: n, then d, then p for basic/graded; n, then g,
/// then d for fixed-count.
inline std::vector<GridPoint> grid_points(const ExperimentConfig& c) {
  std::vector<GridPoint> pts;
  for (auto n : c.nvars) {
    if (c.model == ModelKind::FixedCount) {
      for (auto g : c.generator_counts)
        for (auto d : c.degrees) pts.push_back({n, d, std::nullopt, g});
      continue;
    }
    for (auto d : c.degrees) {
      std::vector<double> ps;
      switch (c.source) {
        case GridSource::BasicGrid: ps = probability_grid_basic(n, d); break;
        case GridSource::GradedGrid: ps = probability_grid_graded(n, d); break;
        case GridSource::Explicit: ps = c.probabilities; break;
      }
      for (double p : ps) pts.push_back({n, d, p, std::nullopt});
    }
  }
  return pts;
}

inline ModelSpec model_for_point(ModelKind kind, const GridPoint& pt) {
  switch (kind) {
    case ModelKind::Basic: return BasicModel{pt.n, pt.d, *pt.p};
    case ModelKind::Graded: return graded_single(pt.n, pt.d, *pt.p);
    case ModelKind::FixedCount: return fixed_count_single(pt.n, pt.d, *pt.g);
  }
  throw std::logic_error("domideal: bad model kind");
}

/// Seed of a grid point, a function of its parameters only, so the same
/// point yields the same rows in any sweep that contains it.
inline std::uint64_t point_seed(std::uint64_t seed, ModelKind kind, const GridPoint& pt) {
  std::uint64_t h = derive_seed(seed, static_cast<std::uint64_t>(kind));
  h = derive_seed(h, pt.n);
  h = derive_seed(h, pt.d);
  h = derive_seed(h, pt.p ? std::bit_cast<std::uint64_t>(*pt.p) : 0);
  return derive_seed(h, pt.g ? *pt.g + 1 : 0);
}

namespace detail {

inline std::optional<std::string> guard_point(const ExperimentConfig& c, const ModelSpec& spec) {
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    return std::string(e.what());
  }
  double expected = 0;
  if (auto* b = std::get_if<BasicModel>(&spec)) {
    expected = b->p * static_cast<double>(count_monomials(b->n, b->D, DegreeMode::UpTo));
  } else if (auto* g = std::get_if<GradedModel>(&spec)) {
    for (std::size_t d = 1; d <= g->D(); ++d)
      expected += g->p[d - 1] * static_cast<double>(count_monomials(g->n, d, DegreeMode::Exact));
  } else {
    for (auto m : std::get<FixedCountModel>(spec).M) expected += static_cast<double>(m);
  }
  if (expected > c.max_expected_generators) {
    std::ostringstream os;
    os << "memory guard: about " << expected << " raw generators per sample exceeds " << c.max_expected_generators;
    return os.str();
  }
  return std::nullopt;
}

}  // namespace detail

inline ExperimentRow run_point(const ExperimentConfig& c, const GridPoint& pt) {
  ExperimentRow row;
  row.model = c.model;
  row.point = pt;
  row.sample_size = c.sample_size;
  row.seed = point_seed(c.seed, c.model, pt);
  row.histogram.assign(pt.n + 1, 0);
  const ModelSpec spec = model_for_point(c.model, pt);
  if (auto reason = detail::guard_point(c, spec)) {
    row.skipped = true;
    row.skip_reason = *reason;
    return row;
  }
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < c.sample_size; ++i) {
    if (c.point_timeout_seconds > 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > c.point_timeout_seconds) {
        row.skipped = true;
        row.skip_reason = "timeout after " + std::to_string(i) + " of " + std::to_string(c.sample_size) + " samples";
        row.dominant_count = 0;
        row.histogram.assign(pt.n + 1, 0);
        return row;
      }
    }
    const auto ideal = sample(spec, SeedSpec{row.seed, i});
    if (is_dominant_ideal(ideal)) {
      ++row.dominant_count;
      ++row.histogram[ideal.size()];
    }
  }
  return row;
}

/// Runs every grid point on a worker pool. `sink` receives rows in grid order
/// on the calling thread as soon as each prefix is complete.
inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config,
                                                 const std::function<void(const ExperimentRow&)>& sink = {}) {
  config.validate();
  const auto pts = grid_points(config);
  std::vector<std::optional<ExperimentRow>> slots(pts.size());
  std::mutex mu;
  std::condition_variable ready;
  std::exception_ptr failure;
  std::atomic<std::size_t> next{0};
  unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(pts.size(), 1)));

  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= pts.size()) return;
      try {
        auto row = run_point(config, pts[i]);
        std::lock_guard lock(mu);
        slots[i] = std::move(row);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(pts.size());
      }
      ready.notify_one();
    }
  };

  std::vector<ExperimentRow> rows;
  rows.reserve(pts.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    std::unique_lock lock(mu);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ready.wait(lock, [&] { return slots[i].has_value() || failure; });
      if (failure) break;
      rows.push_back(std::move(*slots[i]));
      slots[i].reset();
      if (sink) {
        lock.unlock();
        try {
          sink(rows.back());
        } catch (...) {
          next.store(pts.size());
          throw;
        }
        lock.lock();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

/// Shortest decimal that round-trips to the same double.
inline std::string format_probability(double p) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, ptr);
}

/// Serializes rows one at a time; `max_n` fixes the h0..h_max_n columns.
class RowWriter {
 public:
  RowWriter(std::ostream& out, OutputFormat format, std::size_t max_n) : out_(out), format_(format), max_n_(max_n) {}

  void header() {
    if (format_ != OutputFormat::Csv) return;
    out_ << "model,n,d,p,g,sample_size,dominant_count";
    for (std::size_t k = 0; k <= max_n_; ++k) out_ << ",h" << k;
    out_ << ",seed\n";
    out_.flush();
  }

  void write(const ExperimentRow& r) {
    switch (format_) {
      case OutputFormat::Csv: write_csv(r); break;
      case OutputFormat::Jsonl: out_ << row_json(r).dump() << '\n'; break;
      case OutputFormat::Legacy: write_legacy(r); break;
    }
    out_.flush();
  }

  static json row_json(const ExperimentRow& r) {
    json j = {{"model", to_string(r.model)},
              {"n", r.point.n},
              {"d", r.point.d},
              {"p", r.point.p ? json(*r.point.p) : json(nullptr)},
              {"g", r.point.g ? json(*r.point.g) : json(nullptr)},
              {"sample_size", r.sample_size},
              {"seed", r.seed}};
    if (r.skipped) {
      j["skipped"] = true;
      j["reason"] = r.skip_reason;
    } else {
      j["dominant_count"] = r.dominant_count;
      j["histogram"] = r.histogram;
    }
    return j;
  }

 private:
  void write_csv(const ExperimentRow& r) {
    const std::string p = r.point.p ? format_probability(*r.point.p) : "";
    const std::string g = r.point.g ? std::to_string(*r.point.g) : "";
    if (r.skipped) {
      out_ << "# skipped " << to_string(r.model) << ",n=" << r.point.n << ",d=" << r.point.d << ",p=" << p
           << ",g=" << g << ": " << r.skip_reason << '\n';
      return;
    }
    out_ << to_string(r.model) << ',' << r.point.n << ',' << r.point.d << ',' << p << ',' << g << ',' << r.sample_size
         << ',' << r.dominant_count;
    for (std::size_t k = 0; k <= max_n_; ++k) {
      out_ << ',';
      if (k < r.histogram.size()) out_ << r.histogram[k];
    }
    out_ << ',' << r.seed << '\n';
  }

  void write_legacy(const ExperimentRow& r) {
    if (r.skipped) {
      out_ << "-- skipped (n=" << r.point.n << ",d=" << r.point.d << "): " << r.skip_reason << '\n';
      return;
    }
    if (r.model == ModelKind::FixedCount) {
      out_ << '(' << r.point.n << ',' << *r.point.g << ',' << r.point.d << ',' << r.dominant_count << ")\n";
      return;
    }
    out_ << '(' << r.point.d << ',' << format_probability(*r.point.p) << ',' << r.dominant_count << ",[";
    for (std::size_t k = 0; k < r.histogram.size(); ++k) out_ << (k ? "," : "") << r.histogram[k];
    out_ << "])\n";
  }

  std::ostream& out_;
  OutputFormat format_;
  std::size_t max_n_;
};

inline json to_json(const ExperimentConfig& c) {
  json j = {{"model", to_string(c.model)},
            {"n", c.nvars},
            {"degrees", c.degrees},
            {"sample_size", c.sample_size},
            {"seed", c.seed},
            {"format", to_string(c.format)},
            {"threads", c.threads},
            {"point_timeout_seconds", c.point_timeout_seconds},
            {"max_expected_generators", c.max_expected_generators}};
  if (c.model == ModelKind::FixedCount) {
    j["generator_counts"] = c.generator_counts;
  } else {
    j["grid"] = to_string(c.source);
    if (c.source == GridSource::Explicit) j["probabilities"] = c.probabilities;
  }
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

/// Reads a config file; absent keys keep their defaults, and a missing seed
/// falls back to the environment.
inline ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.seed = default_seed();
  if (j.contains("model")) c.model = parse_model_kind(j.at("model").get<std::string>());
  if (j.contains("n")) c.nvars = j.at("n").is_array() ? j.at("n").get<std::vector<std::size_t>>()
                                                       : std::vector<std::size_t>{j.at("n").get<std::size_t>()};
  if (j.contains("degrees")) c.degrees = j.at("degrees").get<std::vector<std::size_t>>();
  if (j.contains("grid")) c.source = parse_grid_source(j.at("grid").get<std::string>());
  if (c.model == ModelKind::Graded && !j.contains("grid")) c.source = GridSource::GradedGrid;
  if (j.contains("probabilities")) {
    c.probabilities = j.at("probabilities").get<std::vector<double>>();
    if (!j.contains("grid")) c.source = GridSource::Explicit;
  }
  if (j.contains("generator_counts")) c.generator_counts = j.at("generator_counts").get<std::vector<std::uint64_t>>();
  if (j.contains("sample_size")) c.sample_size = j.at("sample_size").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("format")) c.format = parse_output_format(j.at("format").get<std::string>());
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  if (j.contains("point_timeout_seconds")) c.point_timeout_seconds = j.at("point_timeout_seconds").get<double>();
  if (j.contains("max_expected_generators")) c.max_expected_generators = j.at("max_expected_generators").get<double>();
  return c;
}

/// Sidecar written next to the data file; the data itself carries no
/// timestamps so reruns compare byte for byte.
inline json experiment_metadata(const ExperimentConfig& c) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream ts;
  ts << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return {{"config", to_json(c)}, {"rng", kRngVersion}, {"started_at", ts.str()}};
}

/// Runs the sweep and streams rows to `out`, flushing after each one.
inline std::vector<ExperimentRow> write_experiment(const ExperimentConfig& config, std::ostream& out) {
  config.validate();
  RowWriter writer(out, config.format, config.max_nvars());
  writer.header();
  return run_experiment(config, [&](const ExperimentRow& r) {
    writer.write(r);
    if (!out) throw std::runtime_error("domideal: write failed");
  });
}

/// File variant: writes `config.output` plus `config.output + ".meta.json"`.
inline std::vector<ExperimentRow> write_experiment(const ExperimentConfig& config) {
  if (config.output.empty()) throw std::invalid_argument("domideal: experiment output path is empty");
  config.validate();
  {
    std::ofstream meta(config.output + ".meta.json");
    if (!meta) throw std::runtime_error("domideal: cannot open " + config.output + ".meta.json");
    meta << experiment_metadata(config).dump(2) << '\n';
  }
  std::ofstream out(config.output, std::ios::trunc);
  if (!out) throw std::runtime_error("domideal: cannot open " + config.output);
  return write_experiment(config, out);
}

}  // namespace domideal
