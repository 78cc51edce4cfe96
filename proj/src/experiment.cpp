#include "ridgelab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "ridgelab/errors.hpp"
#include "ridgelab/qsim.hpp"
#include "ridgelab/random.hpp"

namespace ridgelab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string canonical_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + v + "'");
    }
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        if (v.empty() || v.front() == '-') throw std::invalid_argument(v);
        const unsigned long long x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a nonnegative integer, got '" + v + "'");
    }
}

// "4,8,12" or "start:stop:step" (inclusive).
std::vector<std::size_t> to_grid(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    if (v.find(':') != std::string::npos) {
        std::vector<std::uint64_t> parts;
        std::istringstream ss(v);
        std::string cell;
        while (std::getline(ss, cell, ':')) parts.push_back(to_uint(key, trim(cell)));
        if (parts.size() != 3 || parts[2] == 0 || parts[0] > parts[1])
            throw ConfigError(key, "range must be start:stop:step with step > 0");
        for (std::uint64_t n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(n);
        return out;
    }
    std::istringstream ss(v);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(to_uint(key, trim(cell)));
    return out;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

GridFunction unit_target(PrimeModulus p, std::size_t d, double (*shape)(double s, double pv)) {
    GridFunction f(p, d);
    const double pv = static_cast<double>(p.value());
    for_each_point(p, d, [&](std::size_t lin, std::span<const std::uint64_t> x) {
        std::uint64_t s = 0;
        for (auto c : x) s = (s + c) % p.value();
        f[lin] = shape(static_cast<double>(s), pv);
    });
    const double norm = f.norm2();
    if (!(norm > 0.0)) throw DegenerateActivation("target vanishes on the grid");
    for (auto& v : f.values()) v /= norm;
    return f;
}

std::vector<double> uniform_weights(std::size_t n) { return std::vector<double>(n, 1.0); }

} // namespace

std::vector<std::size_t> ExperimentConfig::default_n_grid() {
    std::vector<std::size_t> g;
    for (std::size_t n = 4; n <= 120; n += 4) g.push_back(n);
    return g;
}

void set_config_value(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = canonical_key(trim(raw_key));
    const std::string v = trim(raw_value);
    if (key == "p") cfg.p = to_uint(key, v);
    else if (key == "d") cfg.d = to_uint(key, v);
    else if (key == "target") cfg.target = v;
    else if (key == "activation") cfg.activation = v;
    else if (key == "lambda") cfg.lambda = to_double(key, v);
    else if (key == "big-delta") cfg.big_delta = to_double(key, v);
    else if (key == "epsilon") cfg.epsilon = to_double(key, v);
    else if (key == "delta-fail") cfg.delta_fail = to_double(key, v);
    else if (key == "alpha") cfg.alpha = to_double(key, v);
    else if (key == "beta") cfg.beta = to_double(key, v);
    else if (key == "n-grid") cfg.n_grid = to_grid(key, v);
    else if (key == "repetitions") cfg.repetitions = to_uint(key, v);
    else if (key == "seed") cfg.seed = to_uint(key, v);
    else if (key == "sampler") cfg.sampler = v;
    else if (key == "baseline") cfg.baseline = v;
    else if (key == "threads") cfg.threads = to_uint(key, v);
    else throw ConfigError(key, "unknown key");
}

void apply_config_text(ExperimentConfig& cfg, std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(trim(line), "line " + std::to_string(lineno) + " is not 'key = value'");
        set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    apply_config_text(cfg, in);
}

void validate_config(const ExperimentConfig& cfg) {
    if (!is_prime(cfg.p)) throw ConfigError("p", std::to_string(cfg.p) + " is not prime");
    if (cfg.d == 0) throw ConfigError("d", "must be at least 1");
    const auto positive = [](const char* key, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be positive");
    };
    positive("lambda", cfg.lambda);
    positive("big-delta", cfg.big_delta);
    positive("epsilon", cfg.epsilon);
    positive("alpha", cfg.alpha);
    positive("beta", cfg.beta);
    if (!(cfg.delta_fail > 0.0 && cfg.delta_fail < 1.0)) throw ConfigError("delta-fail", "must lie in (0, 1)");
    if (cfg.n_grid.empty()) throw ConfigError("n-grid", "must not be empty");
    if (cfg.n_grid.front() == 0) throw ConfigError("n-grid", "entries must be positive");
    for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
        if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) throw ConfigError("n-grid", "must be strictly increasing");
    if (cfg.repetitions == 0) throw ConfigError("repetitions", "must be positive");
    if (cfg.sampler != "alias" && cfg.sampler != "rejection") throw ConfigError("sampler", "use alias or rejection");
    if (cfg.baseline != "uniform" && cfg.baseline != "none") throw ConfigError("baseline", "use uniform or none");
    if (cfg.target != "sine4pi" && cfg.target != "tanh-target" && cfg.target.rfind("file:", 0) != 0)
        throw ConfigError("target", "use sine4pi, tanh-target or file:<path>");
    if (cfg.activation != "ramp-relu" && cfg.activation != "tanh10" && cfg.activation.rfind("file:", 0) != 0)
        throw ConfigError("activation", "use ramp-relu, tanh10 or file:<path>");
    const PrimeModulus pm(cfg.p);
    std::size_t nodes = 0;
    try {
        nodes = grid_size(pm, cfg.d + 1);
    } catch (const DimensionError&) {
        throw ConfigError("d", "grid size overflows");
    }
    if (nodes > dense_limit()) throw ConfigError("d", "p^(d+1) = " + std::to_string(nodes) + " exceeds the dense limit");
}

GridFunction sine4pi_target(PrimeModulus p, std::size_t d) {
    return unit_target(p, d, [](double s, double pv) { return std::sin(4.0 * std::numbers::pi * s / pv); });
}

GridFunction tanh_target(PrimeModulus p, std::size_t d) {
    return unit_target(p, d, [](double s, double pv) { return std::tanh(10.0 * (s - (pv - 1.0) / 2.0) / pv); });
}

EmpiricalData make_dataset(const ExperimentConfig& cfg) {
    const PrimeModulus pm(cfg.p);
    if (cfg.target == "sine4pi") return uniform_dataset(sine4pi_target(pm, cfg.d));
    if (cfg.target == "tanh-target") return uniform_dataset(tanh_target(pm, cfg.d));
    if (cfg.target.rfind("file:", 0) == 0) {
        const auto rows = read_dataset_csv(std::filesystem::path(cfg.target.substr(5)));
        if (!rows.empty() && rows.front().x.dim() != cfg.d)
            throw ConfigError("target", "dataset dimension does not match d");
        return ingest_dataset(rows, pm);
    }
    throw ConfigError("target", "unknown target '" + cfg.target + "'");
}

ActivationPair make_activation(const ExperimentConfig& cfg) {
    const PrimeModulus pm(cfg.p);
    if (cfg.activation == "ramp-relu") return ActivationPair(pm, ramp_activation(cfg.p));
    if (cfg.activation == "tanh10") return ActivationPair(pm, tanh_activation(cfg.p));
    if (cfg.activation.rfind("file:", 0) == 0) {
        const auto g = read_activation_csv(std::filesystem::path(cfg.activation.substr(5)));
        if (g.size() != cfg.p) throw ConfigError("activation", "file must hold exactly p samples");
        return ActivationPair(pm, g);
    }
    throw ConfigError("activation", "unknown activation '" + cfg.activation + "'");
}

const char* method_name(Method m) noexcept { return m == Method::Optimized ? "optimized" : "uniform"; }

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const EmpiricalData data = make_dataset(cfg);
    const ActivationPair pair = make_activation(cfg);

    ExperimentResult result{{}, {}, solve_ridge(data, pair, cfg.lambda), {}, {}};
    result.distribution = optimized_distribution(result.ridge, cfg.big_delta);
    result.params = decay_class_params(cfg.epsilon, cfg.delta_fail, cfg.alpha, cfg.beta);

    const SamplerBackend backend = cfg.sampler == "rejection" ? SamplerBackend::Rejection : SamplerBackend::Alias;
    const std::vector<double> uniform = uniform_weights(result.distribution.probs.size());
    std::vector<Method> methods{Method::Optimized};
    if (cfg.baseline == "uniform") methods.push_back(Method::Uniform);

    std::vector<RunRecord> tasks;
    for (std::size_t n : cfg.n_grid)
        for (Method m : methods)
            for (std::size_t rep = 0; rep < cfg.repetitions; ++rep)
                tasks.push_back({n, m, rep, 0.0, 0,
                                 split_seed(cfg.seed, {rep, n, static_cast<std::uint64_t>(m)})});

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                RunRecord& rec = tasks[i];
                const auto& weights = rec.method == Method::Optimized ? result.distribution.probs : uniform;
                const auto nodes = sample_nodes(weights, rec.n, rec.seed, backend);
                const Subnetwork net = train_subnetwork(data, pair, nodes);
                rec.risk = net.risk;
                rec.nodes_used = nodes.size();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = tasks.size();
            }
        }
    };
    std::size_t threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, tasks.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    result.records = std::move(tasks);
    result.summary = summarize(result.records);
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
    std::map<std::pair<std::size_t, int>, std::vector<double>> groups;
    for (const auto& r : records) groups[{r.n, static_cast<int>(r.method)}].push_back(r.risk);
    std::vector<SummaryRow> out;
    for (const auto& [key, risks] : groups) {
        SummaryRow row;
        row.n = key.first;
        row.method = static_cast<Method>(key.second);
        row.count = risks.size();
        double sum = 0.0;
        for (double r : risks) sum += r;
        row.mean_risk = sum / static_cast<double>(risks.size());
        if (risks.size() > 1) {
            double ss = 0.0;
            for (double r : risks) ss += (r - row.mean_risk) * (r - row.mean_risk);
            row.std_risk = std::sqrt(ss / static_cast<double>(risks.size() - 1));
        }
        out.push_back(row);
    }
    return out;
}

void write_runs_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << "n,method,repetition,risk,nodes_used,seed\n";
    for (const auto& r : records)
        os << r.n << ',' << method_name(r.method) << ',' << r.repetition << ',' << fmt17(r.risk) << ','
           << r.nodes_used << ',' << r.seed << '\n';
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& summary) {
    os << "n,method,mean_risk,std_risk\n";
    for (const auto& s : summary)
        os << s.n << ',' << method_name(s.method) << ',' << fmt17(s.mean_risk) << ',' << fmt17(s.std_risk) << '\n';
}

void write_plotdata_csv(std::ostream& os, const std::vector<SummaryRow>& summary) {
    struct Pair {
        const SummaryRow* opt = nullptr;
        const SummaryRow* uni = nullptr;
    };
    std::map<std::size_t, Pair> by_n;
    for (const auto& s : summary) (s.method == Method::Optimized ? by_n[s.n].opt : by_n[s.n].uni) = &s;
    const auto cell = [](const SummaryRow* s, bool mean) { return s ? fmt17(mean ? s->mean_risk : s->std_risk) : ""; };
    os << "n,optimized_mean,optimized_std,uniform_mean,uniform_std\n";
    for (const auto& [n, pr] : by_n)
        os << n << ',' << cell(pr.opt, true) << ',' << cell(pr.opt, false) << ',' << cell(pr.uni, true) << ','
           << cell(pr.uni, false) << '\n';
}

std::vector<RunRecord> read_runs_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || trim(line) != "n,method,repetition,risk,nodes_used,seed")
        throw IoError("runs csv: unexpected header");
    std::vector<RunRecord> out;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        if (cells.size() != 6) throw IoError("runs csv: expected 6 columns in '" + line + "'");
        RunRecord r;
        try {
            r.n = std::stoull(cells[0]);
            if (cells[1] == "optimized") r.method = Method::Optimized;
            else if (cells[1] == "uniform") r.method = Method::Uniform;
            else throw std::invalid_argument(cells[1]);
            r.repetition = std::stoull(cells[2]);
            r.risk = std::stod(cells[3]);
            r.nodes_used = std::stoull(cells[4]);
            r.seed = std::stoull(cells[5]);
        } catch (const std::exception&) {
            throw IoError("runs csv: cannot parse '" + line + "'");
        }
        out.push_back(r);
    }
    return out;
}

void emit_outputs(const std::vector<RunRecord>& records, const std::vector<SummaryRow>& summary,
                  const std::optional<RidgeletCoeffs>& distribution, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    const auto open = [&](const char* name) {
        const auto path = out_dir / name;
        std::ofstream os(path);
        if (!os) throw IoError("cannot write " + path.string());
        return os;
    };
    const auto close = [&](std::ofstream& os, const char* name) {
        os.close();
        if (!os) throw IoError("write failed for " + (out_dir / name).string());
    };
    {
        auto os = open("runs.csv");
        write_runs_csv(os, records);
        close(os, "runs.csv");
    }
    {
        auto os = open("summary.csv");
        write_summary_csv(os, summary);
        close(os, "summary.csv");
    }
    {
        auto os = open("distribution.csv");
        if (distribution) write_grid_csv(os, *distribution);
        else os << "index,re,im\n";
        close(os, "distribution.csv");
    }
    {
        auto os = open("plotdata.csv");
        write_plotdata_csv(os, summary);
        close(os, "plotdata.csv");
    }
}

void emit_outputs(const ExperimentResult& result, const std::filesystem::path& out_dir) {
    const auto& u = result.ridge.u;
    std::vector<cplx> probs(result.distribution.probs.begin(), result.distribution.probs.end());
    emit_outputs(result.records, result.summary, RidgeletCoeffs(u.modulus(), u.dim(), std::move(probs)), out_dir);
}

} // namespace ridgelab
