// Command-line driver: single runs and parameter sweeps over the walk
// simulator and the quantumness / transport measures, emitting CSV or
// JSON-lines tables.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/classical.hpp"
#include "qwalk/closed_form.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/quantumness.hpp"
#include "qwalk/transport.hpp"
#include "qwalk/walk.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double pi = std::numbers::pi;

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }

struct Cell {
    std::string key;
    std::string value;
    bool quoted = false;
};

std::string csv_row(const std::vector<Cell>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        if (cells[i].quoted) {
            out += '"' + cells[i].value + '"';
        } else {
            out += cells[i].value;
        }
    }
    return out;
}

std::string jsonl_row(const std::vector<Cell>& cells) {
    std::string out = "{";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += '"' + cells[i].key + "\":";
        if (cells[i].quoted || cells[i].value == "inf" ||
            cells[i].value == "-inf") {
            out += '"' + cells[i].value + '"';
        } else {
            out += cells[i].value;
        }
    }
    out += '}';
    return out;
}

// ---------------------------------------------------------------------------
// Shared flag bundle

struct RunParams {
    std::string coin = "hadamard";
    std::string init = "+;0";
    std::optional<double> init_eta_flag;
    std::optional<double> init_gamma_flag;
    std::string channel = "identity";
    double channel_param = 0.0;
    int steps = 0;
    int record_every = 0;
    int loop_n = 0;  // 0 = line
    int sink_site = 1;
    double sink_r = 0.0;
    int start_site = 1;
    std::string classical_mode = "optimal";
    double classical_p = 0.5;
    std::string format = "csv";
    std::string output;
    int threads = 0;
    bool emit_distribution = false;

    // resolved per row
    double alpha = 0.0, beta = 0.0, theta = 0.0;
    bool coin_is_param = false;
    double eta = 0.0, gamma = 0.0;
};

void resolve_threads(RunParams& p) {
    if (p.threads <= 0) {
        p.threads = std::max(1u, std::thread::hardware_concurrency());
    }
}

void resolve_coin(RunParams& p) {
    if (p.coin.rfind("param:", 0) == 0) {
        const std::string body = p.coin.substr(6);
        double a, b, t;
        if (std::sscanf(body.c_str(), "%lf,%lf,%lf", &a, &b, &t) != 3) {
            throw CLI::ValidationError(
                "--coin", "expected param:<alpha>,<beta>,<theta>");
        }
        p.alpha = a;
        p.beta = b;
        p.theta = t;
        p.coin_is_param = true;
    } else if (p.coin != "hadamard" && p.coin != "identity" &&
               p.coin != "pauli-z") {
        throw CLI::ValidationError(
            "--coin", "expected hadamard|identity|pauli-z|param:a,b,t");
    }
}

void resolve_init(RunParams& p) {
    std::string eta_part = p.init;
    std::string gamma_part = "0";
    if (const auto sep = p.init.find(';'); sep != std::string::npos) {
        eta_part = p.init.substr(0, sep);
        gamma_part = p.init.substr(sep + 1);
    }
    if (eta_part == "+") {
        p.eta = 0.0;
    } else if (eta_part == "-") {
        p.eta = pi / 2;
    } else {
        try {
            p.eta = std::stod(eta_part);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--init",
                                       "expected \"<eta>;<gamma>\" or +/-");
        }
    }
    try {
        p.gamma = std::stod(gamma_part);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--init",
                                   "expected \"<eta>;<gamma>\" or +/-");
    }
    if (p.init_eta_flag) p.eta = *p.init_eta_flag;
    if (p.init_gamma_flag) p.gamma = *p.init_gamma_flag;
}

qwalk::CoinOperator build_coin(const RunParams& p) {
    if (p.coin == "hadamard") return qwalk::CoinOperator::hadamard();
    if (p.coin == "identity") return qwalk::CoinOperator::identity();
    if (p.coin == "pauli-z") return qwalk::CoinOperator::pauli_z();
    return qwalk::CoinOperator::parameterized(p.alpha, p.beta, p.theta);
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    double value(int i) const {
        return start + (stop - start) * i / (count - 1);
    }
};

SweepAxis parse_axis(const std::string& text) {
    SweepAxis axis;
    const auto p1 = text.find(':');
    const auto p2 = text.find(':', p1 + 1);
    const auto p3 = text.find(':', p2 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos ||
        p3 == std::string::npos) {
        throw CLI::ValidationError("--sweep",
                                   "expected name:start:stop:count");
    }
    axis.name = text.substr(0, p1);
    try {
        axis.start = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
        axis.stop = std::stod(text.substr(p2 + 1, p3 - p2 - 1));
        axis.count = std::stoi(text.substr(p3 + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--sweep",
                                   "expected name:start:stop:count");
    }
    if (axis.count < 2) {
        throw CLI::ValidationError("--sweep", "axis count must be >= 2");
    }
    return axis;
}

void apply_axis(RunParams& p, const std::string& name, double value) {
    if (name == "q") {
        p.channel_param = value;
    } else if (name == "tau") {
        p.steps = static_cast<int>(std::lround(value));
    } else if (name == "r") {
        p.sink_r = value;
    } else if (name == "alpha" || name == "beta" || name == "theta") {
        if (!p.coin_is_param) {
            throw CLI::ValidationError(
                "--sweep", "coin-angle axes need --coin param:a,b,t");
        }
        (name == "alpha" ? p.alpha : name == "beta" ? p.beta : p.theta) =
            value;
    } else if (name == "eta") {
        p.eta = value;
    } else if (name == "gamma") {
        p.gamma = value;
    } else if (name == "p_plus") {
        p.classical_p = value;
    } else {
        throw CLI::ValidationError("--sweep", "unknown axis name: " + name);
    }
}

// Row index -> per-axis values, last axis fastest.
std::vector<double> axis_values(const std::vector<SweepAxis>& axes,
                                std::size_t row) {
    std::vector<double> vals(axes.size());
    for (std::size_t i = axes.size(); i-- > 0;) {
        const auto count = static_cast<std::size_t>(axes[i].count);
        vals[i] = axes[i].value(static_cast<int>(row % count));
        row /= count;
    }
    return vals;
}

std::size_t total_rows(const std::vector<SweepAxis>& axes) {
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
    return n;
}

// ---------------------------------------------------------------------------
// Output assembly

class Table {
  public:
    Table(const RunParams& p, const std::string& command,
          const std::vector<SweepAxis>& axes) {
        meta_.emplace_back("command", command);
        meta_.emplace_back("tool_version", kVersion);
        meta_.emplace_back("coin", p.coin);
        if (p.coin_is_param) {
            meta_.emplace_back("alpha", fmt(p.alpha));
            meta_.emplace_back("beta", fmt(p.beta));
            meta_.emplace_back("theta", fmt(p.theta));
        }
        meta_.emplace_back("init_eta", fmt(p.eta));
        meta_.emplace_back("init_gamma", fmt(p.gamma));
        meta_.emplace_back("channel", p.channel);
        meta_.emplace_back("channel_param", fmt(p.channel_param));
        meta_.emplace_back("steps", fmt(p.steps));
        if (p.loop_n > 0) {
            meta_.emplace_back("topology", "loop");
            meta_.emplace_back("loop_n", fmt(p.loop_n));
            meta_.emplace_back("sink_site", fmt(p.sink_site));
            meta_.emplace_back("sink_r", fmt(p.sink_r));
            meta_.emplace_back("start_site", fmt(p.start_site));
        } else {
            meta_.emplace_back("topology", "line");
        }
        if (command == "transport") {
            meta_.emplace_back("classical_mode", p.classical_mode);
            meta_.emplace_back("classical_p_plus", fmt(p.classical_p));
        }
        if (command == "evolve") {
            meta_.emplace_back("record_every", fmt(p.record_every));
        }
        for (std::size_t i = 0; i < axes.size(); ++i) {
            std::ostringstream axis_text;
            axis_text << axes[i].name << ':' << fmt(axes[i].start) << ':'
                 << fmt(axes[i].stop) << ':' << axes[i].count;
            meta_.emplace_back("sweep_" + std::to_string(i), axis_text.str());
        }
        meta_.emplace_back("format", p.format);
        meta_.emplace_back("threads", fmt(p.threads));
        jsonl_ = p.format == "jsonl";
    }

    void add_meta(const std::string& key, const std::string& value) {
        meta_.emplace_back(key, value);
    }

    std::string render_row(const std::vector<Cell>& cells) const {
        return jsonl_ ? jsonl_row(cells) : csv_row(cells);
    }

    void write(std::ostream& os, const std::vector<Cell>& header_cells,
               const std::vector<std::string>& rows) const {
        for (const auto& [k, v] : meta_) os << "# " << k << '=' << v << '\n';
        if (!jsonl_) {
            std::string header;
            for (std::size_t i = 0; i < header_cells.size(); ++i) {
                if (i) header += ',';
                header += header_cells[i].key;
            }
            os << header << '\n';
        }
        for (const auto& r : rows) os << r << '\n';
    }

  private:
    std::vector<std::pair<std::string, std::string>> meta_;
    bool jsonl_ = false;
};

int thread_count(const RunParams& p, std::size_t rows) {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    int n = p.threads > 0 ? p.threads : std::max(1, hw);
    return static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(n), rows));
}

// Evaluate rows in parallel; ordering in the output follows the row index.
std::vector<std::string> run_rows(
    const RunParams& p, std::size_t n,
    const std::function<std::string(std::size_t)>& compute) {
    std::vector<std::string> rows(n);
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                rows[i] = compute(i);
            } catch (...) {
                std::scoped_lock lock(err_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    const int workers = thread_count(p, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return rows;
}

int emit(const RunParams& p, const Table& table,
         const std::vector<Cell>& header, const std::vector<std::string>& rows) {
    if (p.output.empty()) {
        table.write(std::cout, header, rows);
        return 0;
    }
    std::ofstream out(p.output);
    if (!out) {
        std::cerr << "cannot open output file: " << p.output << '\n';
        return 2;
    }
    table.write(out, header, rows);
    return 0;
}

// ---------------------------------------------------------------------------
// evolve

int cmd_evolve(RunParams p) {
    resolve_threads(p);
    resolve_coin(p);
    resolve_init(p);
    if (p.record_every <= 0) p.record_every = p.steps;

    const qwalk::CoinOperator coin = build_coin(p);
    const qwalk::CoinState s0 = qwalk::CoinState::pure(p.eta, p.gamma);
    const qwalk::NoiseChannel noise =
        qwalk::make_channel(p.channel, p.channel_param);

    qwalk::Topology topology;
    std::optional<qwalk::SinkChannel> sink;
    if (p.loop_n > 0) {
        const qwalk::Loop loop{p.loop_n, p.sink_site, p.sink_r};
        topology = loop;
        sink = qwalk::SinkChannel::from(loop);
    } else {
        topology = qwalk::Line{p.steps};
    }

    Table table(p, "evolve", {});
    std::vector<Cell> header{{"tau", "", false},
                             {"mean", "", false},
                             {"variance", "", false},
                             {"shannon_entropy", "", false}};
    if (p.emit_distribution) header.push_back({"distribution", "", true});

    qwalk::NoisyWalk walk(coin, s0, noise, topology, sink, p.start_site);
    std::vector<std::string> rows;
    for (int t = 1; t <= p.steps; ++t) {
        walk.step();
        if (t % p.record_every != 0 && t != p.steps) continue;
        const qwalk::PositionState m = qwalk::position_marginal(walk.state());
        const qwalk::Moments mom = qwalk::moments(m.dist);
        std::vector<Cell> cells{
            {"tau", fmt(t), false},
            {"mean", fmt(mom.mean), false},
            {"variance", fmt(mom.variance), false},
            {"shannon_entropy", fmt(qwalk::shannon_entropy(m.dist)), false}};
        if (p.emit_distribution) {
            std::string d;
            for (Eigen::Index i = 0; i < m.dist.probs.size(); ++i) {
                if (i) d += ';';
                d += std::to_string(
                         m.dist.support[static_cast<std::size_t>(i)]) +
                     '=' + fmt(m.dist.probs[i]);
            }
            cells.push_back({"distribution", d, true});
        }
        rows.push_back(table.render_row(cells));
    }
    return emit(p, table, header, rows);
}

// ---------------------------------------------------------------------------
// quantumness

int cmd_quantumness(RunParams p, const std::vector<SweepAxis>& axes) {
    resolve_threads(p);
    resolve_coin(p);
    resolve_init(p);
    Table table(p, "quantumness", axes);

    std::vector<Cell> header;
    for (const auto& a : axes) header.push_back({a.name, "", false});
    for (const char* name : {"Q", "C", "total_Q", "p_plus_star",
                             "upper_bound_eq8", "variance", "mean"}) {
        header.push_back({name, "", false});
    }
    header.push_back({"diagnostics", "", true});

    const std::size_t n = total_rows(axes);
    const auto compute = [&](std::size_t row) {
        RunParams rp = p;
        const std::vector<double> vals = axis_values(axes, row);
        for (std::size_t i = 0; i < axes.size(); ++i) {
            apply_axis(rp, axes[i].name, vals[i]);
        }
        const qwalk::CoinOperator coin = build_coin(rp);
        const qwalk::CoinState s0 = qwalk::CoinState::pure(rp.eta, rp.gamma);
        const qwalk::NoiseChannel noise =
            qwalk::make_channel(rp.channel, rp.channel_param);
        const qwalk::JointState st = qwalk::evolve_noisy(
            coin, s0, noise, qwalk::Line{rp.steps}, rp.steps);
        const qwalk::PositionState m = qwalk::position_marginal(st);
        const qwalk::QuantumnessReport rep =
            qwalk::total_quantumness(m, qwalk::Line{rp.steps}, rp.steps);
        const qwalk::Moments mom = qwalk::moments(m.dist);

        std::vector<Cell> cells;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            cells.push_back({axes[i].name, fmt(vals[i]), false});
        }
        cells.push_back({"Q", fmt(rep.q_value), false});
        cells.push_back({"C", fmt(rep.coherence), false});
        cells.push_back({"total_Q", fmt(rep.total), false});
        cells.push_back({"p_plus_star", fmt(rep.p_plus_star), false});
        cells.push_back({"upper_bound_eq8", fmt(rep.upper_bound_eq8), false});
        cells.push_back({"variance", fmt(mom.variance), false});
        cells.push_back({"mean", fmt(mom.mean), false});
        std::string diag;
        if (!rep.divergent_support.empty()) {
            diag = "divergent_support=";
            for (std::size_t i = 0; i < rep.divergent_support.size(); ++i) {
                if (i) diag += '|';
                diag += std::to_string(rep.divergent_support[i]);
            }
        }
        cells.push_back({"diagnostics", diag, true});
        return table.render_row(cells);
    };
    const std::vector<std::string> rows = run_rows(p, n, compute);
    return emit(p, table, header, rows);
}

// ---------------------------------------------------------------------------
// transport

int cmd_transport(RunParams p, const std::vector<SweepAxis>& axes) {
    resolve_threads(p);
    resolve_coin(p);
    resolve_init(p);
    if (p.classical_mode != "optimal" && p.classical_mode != "fixed") {
        throw CLI::ValidationError("--classical-mode",
                                   "expected optimal or fixed");
    }
    Table table(p, "transport", axes);

    std::vector<Cell> header;
    for (const auto& a : axes) header.push_back({a.name, "", false});
    for (const char* name : {"eta_qw", "eta_rw", "deviation", "u", "Q",
                             "total_Q"}) {
        header.push_back({name, "", false});
    }
    header.push_back({"classical_mode", "", true});
    header.push_back({"classical_p_plus", "", false});

    const std::size_t n = total_rows(axes);
    const auto compute = [&](std::size_t row) {
        RunParams rp = p;
        const std::vector<double> vals = axis_values(axes, row);
        for (std::size_t i = 0; i < axes.size(); ++i) {
            apply_axis(rp, axes[i].name, vals[i]);
        }
        const qwalk::CoinOperator coin = build_coin(rp);
        const qwalk::CoinState s0 = qwalk::CoinState::pure(rp.eta, rp.gamma);
        const qwalk::NoiseChannel noise =
            qwalk::make_channel(rp.channel, rp.channel_param);
        const qwalk::Loop loop{rp.loop_n, rp.sink_site, rp.sink_r};
        const qwalk::ClassicalMode mode = rp.classical_mode == "optimal"
                                              ? qwalk::ClassicalMode::optimal
                                              : qwalk::ClassicalMode::fixed;
        const qwalk::TransportResult result =
            qwalk::transport_report(coin, s0, loop, noise, rp.steps, mode,
                                    rp.classical_p, rp.start_site);
        const qwalk::TransportPoint& pt = result.final_point();

        std::vector<Cell> cells;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            cells.push_back({axes[i].name, fmt(vals[i]), false});
        }
        cells.push_back({"eta_qw", fmt(pt.eta_qw), false});
        cells.push_back({"eta_rw", fmt(pt.eta_rw), false});
        cells.push_back({"deviation", fmt(pt.deviation), false});
        cells.push_back({"u", fmt(pt.u_bound), false});
        cells.push_back({"Q", fmt(pt.q_value), false});
        cells.push_back({"total_Q", fmt(pt.total_q), false});
        cells.push_back({"classical_mode", rp.classical_mode, true});
        cells.push_back({"classical_p_plus", fmt(pt.classical_p_plus), false});
        return table.render_row(cells);
    };
    const std::vector<std::string> rows = run_rows(p, n, compute);
    return emit(p, table, header, rows);
}

// ---------------------------------------------------------------------------
// oracle-check

struct OracleParams {
    RunParams run;
    int max_tau = 30;
    int random_coins = 0;
    unsigned long seed = 0;
};

int cmd_oracle_check(OracleParams op) {
    RunParams& p = op.run;
    resolve_coin(p);
    resolve_init(p);

    struct Candidate {
        qwalk::CoinOperator coin;
        qwalk::CoinState init;
        std::string label;
    };
    std::vector<Candidate> candidates;
    if (op.random_coins > 0) {
        std::mt19937_64 rng(op.seed);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
        std::uniform_real_distribution<double> theta(0.15, pi / 2 - 0.15);
        std::uniform_real_distribution<double> eta(0.0, pi);
        for (int i = 0; i < op.random_coins; ++i) {
            const double a = angle(rng), b = angle(rng), t = theta(rng);
            const double e = eta(rng), g = angle(rng);
            std::ostringstream label;
            label << "param:" << fmt(a) << ',' << fmt(b) << ',' << fmt(t);
            candidates.push_back({qwalk::CoinOperator::parameterized(a, b, t),
                                  qwalk::CoinState::pure(e, g), label.str()});
        }
    } else {
        candidates.push_back({build_coin(p),
                              qwalk::CoinState::pure(p.eta, p.gamma), p.coin});
    }

    std::ostream& os = std::cout;
    os << "# command=oracle-check tool_version=" << kVersion
       << " max_tau=" << op.max_tau << " random_coins=" << op.random_coins
       << " seed=" << op.seed << '\n';

    double worst = 0.0;
    std::string worst_label;
    int worst_tau = 0, worst_x = 0;
    for (const Candidate& cand : candidates) {
        if (qwalk::coin_is_singular(cand.coin)) {
            os << "coin=" << cand.label
               << " skipped=SingularCoin (step-by-step engine fallback)\n";
            continue;
        }
        double coin_worst = 0.0;
        for (int tau = 1; tau <= op.max_tau; ++tau) {
            const qwalk::PureWalkState analytic =
                qwalk::closed_form_state(cand.coin, cand.init, tau);
            const qwalk::PureWalkState engine =
                qwalk::evolve_pure(cand.coin, cand.init, qwalk::Line{tau}, tau);
            for (int i = 0; i <= tau; ++i) {
                const double dev = std::max(
                    std::abs(analytic.psi_plus[i] - engine.psi_plus[i]),
                    std::abs(analytic.psi_minus[i] - engine.psi_minus[i]));
                if (dev > coin_worst) coin_worst = dev;
                if (dev > worst) {
                    worst = dev;
                    worst_label = cand.label;
                    worst_tau = tau;
                    worst_x = analytic.support[static_cast<std::size_t>(i)];
                }
            }
        }
        os << "coin=" << cand.label << " max_deviation=" << fmt(coin_worst)
           << '\n';
    }
    os << "max_deviation=" << fmt(worst) << '\n';
    if (worst >= 1e-10) {
        os << "FAIL worst coin=" << worst_label << " tau=" << worst_tau
           << " x=" << worst_x << " deviation=" << fmt(worst) << '\n';
        return 1;
    }
    os << "OK\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time quantum walk simulator and quantumness toolkit"};
    app.require_subcommand(1);

    RunParams ev, qn, tr;
    OracleParams oc;
    std::vector<std::string> qn_sweeps, tr_sweeps;

    auto add_common = [](CLI::App* cmd, RunParams& p) {
        cmd->add_option("--coin", p.coin,
                        "hadamard|identity|pauli-z|param:<alpha>,<beta>,<theta>");
        cmd->add_option("--init", p.init,
                        "initial coin \"<eta>;<gamma>\" (+ for eta=0, - for "
                        "eta=pi/2)");
        cmd->add_option("--init-eta", p.init_eta_flag, "initial eta override");
        cmd->add_option("--init-gamma", p.init_gamma_flag,
                        "initial gamma override");
        cmd->add_option("--channel", p.channel,
                        "identity|contraction|unital-decay|amplitude-damping|"
                        "depolarizing");
        cmd->add_option("--channel-param", p.channel_param,
                        "channel strength in [0,1]");
        cmd->add_option("--format", p.format, "csv|jsonl")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        cmd->add_option("--output", p.output, "write the table to a file");
        cmd->add_option("--threads", p.threads, "sweep worker cap");
    };

    CLI::App* evolve = app.add_subcommand("evolve", "step a walk and emit moments");
    add_common(evolve, ev);
    evolve->add_option("--steps", ev.steps, "number of walk steps")
        ->required()
        ->check(CLI::PositiveNumber);
    evolve->add_option("--record-every", ev.record_every,
                       "emit a row every k steps (default: only the last)");
    evolve->add_option("--loop", ev.loop_n, "loop site count (line if absent)");
    evolve->add_option("--sink-site", ev.sink_site, "loop sink site k");
    evolve->add_option("--sink-r", ev.sink_r, "sink leak probability");
    evolve->add_option("--start-site", ev.start_site, "loop start site");
    evolve->add_flag("--distribution", ev.emit_distribution,
                     "append the full position distribution");

    CLI::App* quantumness =
        app.add_subcommand("quantumness", "quantumness measures on the line");
    add_common(quantumness, qn);
    quantumness->add_option("--tau", qn.steps, "walk length")
        ->required()
        ->check(CLI::PositiveNumber);
    quantumness->add_option("--sweep", qn_sweeps,
                            "axis name:start:stop:count (repeatable)");

    CLI::App* transport =
        app.add_subcommand("transport", "loop transport vs quantumness");
    add_common(transport, tr);
    transport->add_option("--tau", tr.steps, "walk length")
        ->required()
        ->check(CLI::PositiveNumber);
    transport->add_option("--loop", tr.loop_n, "loop site count")->required();
    transport->add_option("--sink-site", tr.sink_site, "loop sink site k");
    transport->add_option("--sink-r", tr.sink_r, "sink leak probability");
    transport->add_option("--start-site", tr.start_site, "loop start site");
    transport->add_option("--classical-mode", tr.classical_mode,
                          "optimal|fixed");
    transport->add_option("--classical-p", tr.classical_p,
                          "classical bias for fixed mode");
    transport->add_option("--sweep", tr_sweeps,
                          "axis name:start:stop:count (repeatable)");

    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "closed-form amplitudes vs the step engine");
    add_common(oracle, oc.run);
    oracle->add_option("--max-tau", oc.max_tau, "check tau = 1..max");
    oracle->add_option("--random-coins", oc.random_coins,
                       "number of random coins (0: use --coin)");
    oracle->add_option("--seed", oc.seed, "random coin seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (evolve->parsed()) return cmd_evolve(ev);
        if (quantumness->parsed()) {
            std::vector<SweepAxis> axes;
            for (const auto& s : qn_sweeps) axes.push_back(parse_axis(s));
            return cmd_quantumness(qn, axes);
        }
        if (transport->parsed()) {
            std::vector<SweepAxis> axes;
            for (const auto& s : tr_sweeps) axes.push_back(parse_axis(s));
            return cmd_transport(tr, axes);
        }
        if (oracle->parsed()) return cmd_oracle_check(oc);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const qwalk::ParameterOutOfRangeError& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return 2;
    } catch (const qwalk::UnsupportedTopologyError& e) {
        std::cerr << "invalid topology: " << e.what() << '\n';
        return 2;
    } catch (const qwalk::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
