#include "mdist/search.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "mdist/errors.h"

namespace mdist {

namespace {

// Coordinates of agents then alternatives, `dim` per point.
struct Embedding {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t dim = 1;
  std::vector<double> coords;

  Instance to_instance() const {
    if (dim == 1) {
      return LineInstance(
          std::vector<double>(coords.begin(), coords.begin() + n),
          std::vector<double>(coords.begin() + n, coords.end()));
    }
    std::vector<std::vector<double>> agents(n);
    std::vector<std::vector<double>> alternatives(m);
    for (std::size_t p = 0; p < n + m; ++p) {
      std::vector<double> point(coords.begin() + p * dim,
                                coords.begin() + (p + 1) * dim);
      (p < n ? agents[p] : alternatives[p - n]) = std::move(point);
    }
    return euclidean_instance(agents, alternatives);
  }
};

constexpr std::size_t kGeneralDimension = 2;

Embedding random_embedding(Space space, std::size_t n, std::size_t m,
                           std::mt19937_64& rng) {
  Embedding e;
  e.n = n;
  e.m = m;
  e.dim = space == Space::kLine ? 1 : kGeneralDimension;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  e.coords.resize((n + m) * e.dim);
  for (double& c : e.coords) c = unit(rng);
  return e;
}

// Folds x back into [0, 1].
double reflect(double x) {
  x = std::fmod(std::abs(x), 2.0);
  return x > 1.0 ? 2.0 - x : x;
}

std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart),
                    static_cast<std::uint32_t>(
                        static_cast<std::uint64_t>(restart) >> 32)};
  return std::mt19937_64(seq);
}

std::size_t draw_size(const SizeRange& range, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(range.lo, range.hi)(rng);
}

struct RestartOutcome {
  Embedding best;
  DistortionReport report;
  std::vector<HistoryEntry> history;
  std::size_t evaluations = 0;
};

RestartOutcome run_restart(const SearchConfig& config, std::size_t restart) {
  auto rng = restart_rng(config.seed, restart);
  const std::size_t n = draw_size(config.n_range, rng);
  const std::size_t m = draw_size(config.m_range, rng);

  RestartOutcome out;
  out.best = random_embedding(config.space, n, m, rng);
  auto evaluate = [&](const Embedding& e) {
    ++out.evaluations;
    return distortion(e.to_instance(), config.mechanism, config.objective);
  };
  out.report = evaluate(out.best);
  out.history.push_back({restart, 0, out.report.ratio});

  std::uniform_int_distribution<std::size_t> pick(0,
                                                  out.best.coords.size() - 1);
  std::normal_distribution<double> move(0.0, config.step_size);
  Embedding candidate = out.best;
  for (std::size_t step = 1; step <= config.steps; ++step) {
    const std::size_t k = pick(rng);
    candidate.coords[k] = reflect(out.best.coords[k] + move(rng));
    auto report = evaluate(candidate);
    if (report.ratio > out.report.ratio) {
      out.best.coords[k] = candidate.coords[k];
      out.report = report;
      out.history.push_back({restart, step, report.ratio});
    } else {
      candidate.coords[k] = out.best.coords[k];
    }
  }
  return out;
}

void check_config(const SearchConfig& config) {
  auto bad_range = [](const SizeRange& r) { return r.lo < 1 || r.hi < r.lo; };
  if (bad_range(config.n_range)) {
    throw ParameterError("search: n range must satisfy 1 <= lo <= hi");
  }
  if (bad_range(config.m_range)) {
    throw ParameterError("search: m range must satisfy 1 <= lo <= hi");
  }
  if (config.restarts == 0 || config.steps == 0) {
    throw ParameterError("search: restarts and steps must be positive");
  }
  if (!(config.step_size > 0.0) || !std::isfinite(config.step_size)) {
    throw ParameterError("search: step size must be positive");
  }
  if (config.mechanism.kind != MechanismKind::kOmniscient &&
      requirements(config.mechanism.kind).line_order &&
      config.space != Space::kLine) {
    throw UnsupportedError("search: " + config.mechanism.name() +
                           " only runs on line instances");
  }
  make_mechanism(config.mechanism.kind, config.mechanism.alpha);
}

}  // namespace

Instance random_instance(Space space, std::size_t n, std::size_t m,
                         std::uint64_t seed) {
  if (n == 0 || m == 0) {
    throw ParameterError("random_instance: n and m must be at least 1");
  }
  std::mt19937_64 rng(seed);
  return random_embedding(space, n, m, rng).to_instance();
}

SearchResult hill_climb(const SearchConfig& config) {
  check_config(config);
  std::vector<RestartOutcome> outcomes(config.restarts);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(config.threads, config.restarts));
  if (workers == 1) {
    for (std::size_t r = 0; r < config.restarts; ++r) {
      outcomes[r] = run_restart(config, r);
    }
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = w; r < config.restarts; r += workers) {
            outcomes[r] = run_restart(config, r);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Highest ratio wins; the earliest restart wins ties.
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].report.ratio > outcomes[best].report.ratio) best = r;
  }
  SearchResult result{outcomes[best].best.to_instance(),
                      outcomes[best].report,
                      outcomes[best].report.ratio,
                      best,
                      {},
                      config.seed,
                      0};
  for (auto& outcome : outcomes) {
    result.evaluations += outcome.evaluations;
    result.history.insert(result.history.end(), outcome.history.begin(),
                          outcome.history.end());
  }
  return result;
}

}  // namespace mdist
