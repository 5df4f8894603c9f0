#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ocd/dataset.hpp"
#include "ocd/error.hpp"
#include "ocd/experiment.hpp"
#include "ocd/graph_io.hpp"
#include "ocd/metrics.hpp"
#include "ocd/parallel.hpp"
#include "ocd/scoring.hpp"
#include "ocd/search.hpp"
#include "ocd/simulate.hpp"
#include "run_config.hpp"

namespace ocd::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kExperiments[] = {"fig1-identifiability", "shd-curve", "confounder-grid", "binary-null"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
    }
    return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
    const std::string t = trim(text);
    const auto dots = t.find("..");
    std::vector<T> values;
    if (dots == std::string::npos) {
        std::stringstream in(t);
        std::string item;
        while (std::getline(in, item, ',')) values.push_back(parse(trim(item)));
    } else {
        const std::string rest = t.substr(dots + 2);
        const auto colon = rest.find(':');
        const T lo = parse(trim(t.substr(0, dots)));
        const T hi = parse(trim(rest.substr(0, colon)));
        const T step = colon == std::string::npos ? lo : parse(trim(rest.substr(colon + 1)));
        if (!(step > 0) || hi < lo) throw Error(ErrorKind::ParseError, "bad range: '" + text + "'");
        for (int k = 0;; ++k) {
            const T v = static_cast<T>(lo + k * step);
            if (static_cast<double>(v) > static_cast<double>(hi) + 1e-9 * std::abs(static_cast<double>(hi))) break;
            values.push_back(v);
        }
    }
    if (values.empty()) throw Error(ErrorKind::ParseError, "empty list: '" + text + "'");
    return values;
}

FitOptions fit_options(const RunConfig& c) {
    FitOptions o;
    o.link = parse_link(c.link);
    o.max_iter = c.max_iter;
    o.tol_grad = c.tol_grad;
    o.tol_nll = c.tol_nll;
    o.param_bound = c.param_bound;
    if (o.max_iter < 1 || !(o.tol_grad > 0) || !(o.tol_nll > 0) || !(o.param_bound > 0)) {
        throw Error(ErrorKind::InvalidArgument, "optimizer settings must be positive");
    }
    return o;
}

int threads_of(const RunConfig& c) { return c.threads > 0 ? c.threads : default_thread_count(); }

SearchOptions search_options(const RunConfig& c) {
    SearchOptions s;
    s.fit = fit_options(c);
    s.max_parents = c.max_parents;
    if (s.max_parents && *s.max_parents < 0) throw Error(ErrorKind::InvalidArgument, "--max-parents must be >= 0");
    s.improvement = c.first_improvement ? Improvement::First : Improvement::Best;
    s.threads = threads_of(c);
    return s;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
}

OrdinalDataset load_dataset(const RunConfig& c, const std::string& path) {
    if (c.discretize && c.trichotomize_zero) {
        throw Error(ErrorKind::InvalidArgument, "--discretize and --trichotomize-zero are exclusive");
    }
    if (c.discretize) return discretize_table(read_real_csv(path), *c.discretize);
    if (c.trichotomize_zero) return trichotomize_table(read_real_csv(path));
    return read_ordinal_csv(path, LevelsSpec::parse(c.levels));
}

json document(const RunConfig& c) { return json{{"schema", kSchemaVersion}, {"config", c}}; }

void emit(const json& doc, const RunConfig& c, std::ostream& out) {
    if (c.out.empty()) {
        out << doc.dump(2) << '\n';
        return;
    }
    std::ofstream file(c.out);
    if (!file) throw Error(ErrorKind::IoError, "cannot write " + c.out);
    file << doc.dump(2) << '\n';
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream file(path);
    if (!file) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    file << text;
}

json edges_json(const Dag& g, const std::vector<std::string>& names) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({names[e.source], names[e.target]});
    return edges;
}

json local_json(const LocalScore& s, const std::vector<std::string>& names) {
    json parents = json::array();
    for (NodeId k : s.parents) parents.push_back(names[k]);
    return {{"node", names[s.node]}, {"parents", parents}, {"bic", s.bic},
            {"loglik", s.loglik},    {"k", s.k},           {"degenerate", s.degenerate}};
}

std::string direction_name(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

Direction parse_direction(const std::string& text) {
    const std::string t = trim(text);
    if (t == "forward" || t == "->" || t == "1") return Direction::Forward;
    if (t == "backward" || t == "<-" || t == "-1") return Direction::Backward;
    throw Error(ErrorKind::ParseError, "unknown direction '" + text + "'");
}

std::string number(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

// fit ----------------------------------------------------------------------

int run_fit(const RunConfig& c, std::ostream& out) {
    require(c.csv, "--csv");
    const OrdinalDataset data = load_dataset(c, c.csv);
    const SearchOptions opts = search_options(c);
    const SearchKind kind = parse_search_kind(c.search);

    DiscoveryResult result;
    if (kind == SearchKind::Exhaustive) {
        if (c.init != "empty") throw Error(ErrorKind::InvalidArgument, "--init applies to greedy search only");
        result = exhaustive_search(data, opts);
    } else {
        const Dag initial = c.init == "empty" ? Dag(data.num_columns()) : read_edge_list(c.init, data.names());
        result = greedy_search(data, initial, opts);
    }

    const auto& names = data.names();
    json doc = document(c);
    doc["data"] = {{"columns", names}, {"levels", data.levels()}, {"n", data.num_rows()}};
    doc["graph"] = {{"edges", edges_json(result.graph, names)}};
    doc["bic"] = result.bic;
    json locals = json::array();
    for (const auto& s : result.local_scores) locals.push_back(local_json(s, names));
    doc["local_scores"] = locals;
    json moves = json::array();
    for (const Move& m : result.moves_taken) {
        moves.push_back({{"kind", to_string(m.kind)}, {"source", names[m.edge.source]}, {"target", names[m.edge.target]}});
    }
    doc["diagnostics"] = {{"search", to_string(kind)},
                          {"improvement", to_string(opts.improvement)},
                          {"iterations", result.iterations},
                          {"moves", moves},
                          {"score_evaluations", result.score_evaluations},
                          {"graphs_evaluated", result.graphs_evaluated},
                          {"fresh_fits_per_iteration", result.fresh_fits_per_iteration}};
    if (!c.dot.empty()) write_text(c.dot, to_dot(result.graph, names));
    emit(doc, c, out);
    return kSuccess;
}

// score --------------------------------------------------------------------

int run_score(const RunConfig& c, std::ostream& out) {
    require(c.csv, "--csv");
    require(c.graph, "--graph");
    const OrdinalDataset data = load_dataset(c, c.csv);
    const Dag g = read_edge_list(c.graph, data.names());
    const GraphScore score = global_bic(g, data, fit_options(c));
    json doc = document(c);
    doc["graph"] = {{"edges", edges_json(g, data.names())}};
    doc["bic"] = score.bic;
    json locals = json::array();
    for (const auto& s : score.local) locals.push_back(local_json(s, data.names()));
    doc["local_scores"] = locals;
    emit(doc, c, out);
    return kSuccess;
}

// pair ---------------------------------------------------------------------

std::map<std::string, Direction> read_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    std::map<std::string, Direction> labels;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "label line needs 'pair,direction': " + line);
        if (header) {
            header = false;
            continue;
        }
        labels[trim(line.substr(0, comma))] = parse_direction(line.substr(comma + 1));
    }
    return labels;
}

int run_pair(const RunConfig& c, std::ostream& out) {
    require(c.csv, "--csv");
    std::vector<fs::path> files;
    if (fs::is_directory(c.csv)) {
        for (const auto& entry : fs::directory_iterator(c.csv)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) throw Error(ErrorKind::InvalidArgument, "no .csv files in " + c.csv);
    } else {
        files.push_back(c.csv);
    }
    std::map<std::string, Direction> labels;
    if (!c.truth.empty()) labels = read_labels(c.truth);

    const FitOptions opts = fit_options(c);
    std::vector<PairDecision> decisions(files.size());
    std::vector<OrdinalDataset> datasets;
    for (const auto& f : files) datasets.push_back(load_dataset(c, f.string()));
    parallel_for(files.size(), threads_of(c), [&](std::size_t i) { decisions[i] = forced_decision(datasets[i], opts); });

    json rows = json::array();
    std::ostringstream tsv;
    tsv << "pair\tcause\teffect\tdecision\tconfidence\ttie\tbic_forward\tbic_backward\ttruth\tcorrect\n";
    std::vector<Direction> chosen, truth;
    std::vector<double> confidences;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const std::string id = files[i].stem().string();
        const auto& names = datasets[i].names();
        const PairDecision& d = decisions[i];
        const bool fwd = d.direction == Direction::Forward;
        json row{{"pair", id},
                 {"cause", names[fwd ? 0 : 1]},
                 {"effect", names[fwd ? 1 : 0]},
                 {"decision", direction_name(d.direction)},
                 {"confidence", d.confidence},
                 {"tie", d.tie},
                 {"bic_forward", d.bic_forward},
                 {"bic_backward", d.bic_backward}};
        std::string truth_text = "", correct_text = "";
        const auto label = labels.find(id);
        if (label != labels.end()) {
            row["truth"] = direction_name(label->second);
            row["correct"] = label->second == d.direction;
            truth_text = direction_name(label->second);
            correct_text = label->second == d.direction ? "1" : "0";
            chosen.push_back(d.direction);
            truth.push_back(label->second);
            confidences.push_back(d.confidence);
        }
        rows.push_back(row);
        tsv << id << '\t' << row["cause"].get<std::string>() << '\t' << row["effect"].get<std::string>() << '\t'
            << direction_name(d.direction) << '\t' << number(d.confidence) << '\t' << d.tie << '\t'
            << number(d.bic_forward) << '\t' << number(d.bic_backward) << '\t' << truth_text << '\t'
            << correct_text << '\n';
    }

    json doc = document(c);
    doc["pairs"] = rows;
    if (!labels.empty()) {
        if (truth.size() != labels.size()) {
            throw Error(ErrorKind::LengthMismatch, "labels do not match the pair files one to one");
        }
        json summary{{"labelled", truth.size()}, {"accuracy", accuracy(chosen, truth)}};
        const bool both = std::count(truth.begin(), truth.end(), Direction::Forward) > 0 &&
                          std::count(truth.begin(), truth.end(), Direction::Backward) > 0;
        summary["auc"] = both ? json(auc_ranked(confidences, truth)) : json(nullptr);
        doc["summary"] = summary;
    }
    if (!c.tsv.empty()) write_text(c.tsv, tsv.str());
    emit(doc, c, out);
    return kSuccess;
}

// simulate -----------------------------------------------------------------

int run_simulate(RunConfig c, std::ostream& out) {
    require(c.out, "--out");
    const LinkKind link = parse_link(c.link);
    if (!c.sigma) c.sigma = 1.0;
    if (!c.n) c.n = 500;
    if (c.confounder) {
        c.p = 3;
        c.edges = 3;
        c.num_levels = 5;
    } else {
        if (!c.p) c.p = 10;
        if (!c.num_levels) c.num_levels = 3;
        if (!c.edges) c.edges = *c.p - 1;
    }
    const double sigma = *c.sigma;
    const std::size_t n = *c.n;
    if (!(sigma > 0)) throw Error(ErrorKind::InvalidArgument, "--sigma must be positive");
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "--n must be positive");
    Rng rng(c.seed);

    GroundTruthModel model;
    OrdinalDataset data = [&] {
        if (c.confounder) {
            PairSample s = confounder_scenario(sigma, n, rng, link);
            model = s.model;
            return s.data;
        }
        const int p = *c.p;
        const int L = *c.num_levels;
        if (p < 1) throw Error(ErrorKind::InvalidArgument, "--p must be positive");
        if (L < 2) throw Error(ErrorKind::InvalidArgument, "--levels must be at least 2");
        Rng graph_rng = rng.split(0), param_rng = rng.split(1), data_rng = rng.split(2);
        const Dag g = random_dag(p, *c.edges, graph_rng);
        ParameterDraw how;
        how.sigma = sigma;
        how.link = link;
        model = draw_parameters(g, std::vector<int>(p, L), how, param_rng);
        return sample(model, n, data_rng);
    }();

    // The observed columns keep their names; in confounder mode the truth is
    // the X1 -> X2 edge between them.
    const Dag observed_truth = c.confounder ? Dag(2, std::vector<Edge>{{0, 1}}) : model.graph;
    write_csv(fs::path(c.out), data);
    if (!c.truth.empty()) write_text(c.truth, format_edge_list(observed_truth, data.names()));

    json doc = document(c);
    doc["data"] = {{"path", c.out}, {"columns", data.names()}, {"levels", data.levels()}, {"n", data.num_rows()}};
    doc["truth"] = {{"edges", edges_json(observed_truth, data.names())}};
    // --out names the data file here, so the report always goes to stdout.
    out << doc.dump(2) << '\n';
    return kSuccess;
}

// discretize ---------------------------------------------------------------

int run_discretize(const RunConfig& c, std::ostream& out) {
    require(c.csv, "--csv");
    require(c.out, "--out");
    if (!c.discretize && !c.trichotomize_zero) {
        throw Error(ErrorKind::InvalidArgument, "one of --discretize L or --trichotomize-zero is required");
    }
    const OrdinalDataset data = load_dataset(c, c.csv);
    write_csv(fs::path(c.out), data);
    json doc = document(c);
    doc["data"] = {{"path", c.out}, {"columns", data.names()}, {"levels", data.levels()}, {"n", data.num_rows()}};
    out << doc.dump(2) << '\n';
    return kSuccess;
}

// eval ---------------------------------------------------------------------

int run_eval(const RunConfig& c, std::ostream& out) {
    require(c.estimated, "--estimated");
    require(c.truth, "--truth");
    const auto est = read_named_edges(c.estimated);
    const auto tru = read_named_edges(c.truth);
    std::vector<std::string> names;
    if (!c.csv.empty()) {
        std::ifstream in(c.csv);
        if (!in) throw Error(ErrorKind::IoError, "cannot read " + c.csv);
        names = parse_real_csv(in).names;
    } else {
        auto add = [&](const std::string& v) {
            if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
        };
        for (const auto* list : {&tru, &est}) {
            for (const auto& [a, b] : *list) {
                add(a);
                add(b);
            }
        }
        if (names.empty()) names.push_back("X1");
    }
    const Dag g_est = dag_from_named_edges(est, names);
    const Dag g_true = dag_from_named_edges(tru, names);
    json doc = document(c);
    doc["nodes"] = names;
    doc["shd"] = shd(g_est, g_true);
    doc["estimated_edges"] = g_est.num_edges();
    doc["true_edges"] = g_true.num_edges();
    emit(doc, c, out);
    return kSuccess;
}

// experiment ---------------------------------------------------------------

void write_experiment_files(const RunConfig& c, const std::string& tsv, const json& doc) {
    if (c.out_dir.empty()) return;
    fs::create_directories(c.out_dir);
    write_text(fs::path(c.out_dir) / (c.experiment + ".tsv"), tsv);
    write_text(fs::path(c.out_dir) / (c.experiment + ".summary.json"), doc.dump(2) + "\n");
}

int run_experiment(RunConfig c, std::ostream& out) {
    require(c.experiment, "experiment name");
    const FitOptions fit = fit_options(c);
    std::ostringstream tsv;
    json summary = json::array();

    if (c.experiment == "fig1-identifiability") {
        if (!c.n) c.n = 100000;
        const Fig1Result r = fig1_identifiability({*c.n, c.seed, fit});
        tsv << "n\ttv_forward\ttv_reverse\tbic_forward\tbic_reverse\n"
            << r.n << '\t' << number(r.tv_forward) << '\t' << number(r.tv_reverse) << '\t'
            << number(r.bic_forward) << '\t' << number(r.bic_reverse) << '\n';
        summary = {{"n", r.n},
                   {"tv_forward", r.tv_forward},
                   {"tv_reverse", r.tv_reverse},
                   {"bic_forward", r.bic_forward},
                   {"bic_reverse", r.bic_reverse},
                   {"reverse_bic_larger", r.bic_reverse > r.bic_forward}};
    } else if (c.experiment == "shd-curve") {
        if (!c.p) c.p = 10;
        if (!c.num_levels) c.num_levels = 3;
        if (!c.edges) c.edges = *c.p - 1;
        if (!c.sigmas) c.sigmas = ShdCurveConfig{}.sigmas;
        if (!c.n) c.n = 500;
        if (!c.repeats) c.repeats = 5;
        if (*c.repeats < 1) throw Error(ErrorKind::InvalidArgument, "--repeats must be positive");
        ShdCurveConfig cfg;
        cfg.p = *c.p;
        cfg.levels = *c.num_levels;
        cfg.edges = c.edges;
        cfg.sigmas = *c.sigmas;
        cfg.n = *c.n;
        cfg.repeats = *c.repeats;
        cfg.seed = c.seed;
        cfg.search = search_options(c);
        cfg.threads = threads_of(c);
        const ShdCurveResult r = shd_curve(cfg);
        tsv << "sigma\trepeat\tshd\ttrue_edges\testimated_edges\tbic\titerations\n";
        for (const auto& cell : r.cells) {
            tsv << number(cell.sigma) << '\t' << cell.repeat << '\t' << cell.shd << '\t' << cell.true_edges << '\t'
                << cell.estimated_edges << '\t' << number(cell.bic) << '\t' << cell.iterations << '\n';
        }
        for (const auto& s : r.summary) {
            summary.push_back({{"sigma", s.sigma}, {"mean_shd", s.mean_shd}, {"mean_empty_shd", s.mean_empty_shd}});
        }
    } else if (c.experiment == "confounder-grid" || c.experiment == "binary-null") {
        PairGridConfig cfg;
        if (c.experiment == "binary-null") {
            cfg.scenario = PairScenario::Bivariate;
            if (!c.num_levels) c.num_levels = 2;
            if (!c.sigmas) c.sigmas = std::vector<double>{1.0};
            if (!c.ns) c.ns = std::vector<std::size_t>{1000};
        } else {
            cfg.scenario = c.no_confounder ? PairScenario::Bivariate : PairScenario::Confounder;
            if (!c.num_levels) c.num_levels = 5;
            if (!c.sigmas) c.sigmas = cfg.sigmas;
            if (!c.ns) c.ns = cfg.ns;
            if (!c.no_confounder && *c.num_levels != 5) {
                throw Error(ErrorKind::InvalidArgument, "the confounder scenario uses 5 levels");
            }
        }
        if (!c.repeats) c.repeats = 100;
        if (*c.repeats < 1) throw Error(ErrorKind::InvalidArgument, "--repeats must be positive");
        cfg.cause_levels = cfg.effect_levels = *c.num_levels;
        cfg.sigmas = *c.sigmas;
        cfg.ns = *c.ns;
        cfg.repeats = *c.repeats;
        cfg.seed = c.seed;
        cfg.fit = fit;
        cfg.threads = threads_of(c);
        const PairGridResult r = pair_grid(cfg);
        tsv << "sigma\tn\trepeat\ttruth\tdecision\tconfidence\ttie\tcorrect\n";
        for (const auto& cell : r.cells) {
            tsv << number(cell.sigma) << '\t' << cell.n << '\t' << cell.repeat << '\t' << direction_name(cell.truth)
                << '\t' << direction_name(cell.decision.direction) << '\t' << number(cell.decision.confidence) << '\t'
                << cell.decision.tie << '\t' << (cell.truth == cell.decision.direction) << '\n';
        }
        for (const auto& s : r.summary) {
            summary.push_back({{"sigma", s.sigma},
                               {"n", s.n},
                               {"accuracy", s.accuracy},
                               {"auc", s.auc ? json(*s.auc) : json(nullptr)},
                               {"ties", s.ties}});
        }
    } else {
        std::string known;
        for (const char* e : kExperiments) known += std::string(known.empty() ? "" : ", ") + e;
        throw Error(ErrorKind::InvalidArgument, "unknown experiment '" + c.experiment + "' (known: " + known + ")");
    }

    json doc = document(c);
    doc["experiment"] = c.experiment;
    doc["summary"] = summary;
    write_experiment_files(c, tsv.str(), doc);
    emit(doc, c, out);
    return kSuccess;
}

std::string config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

json error_json(const std::string& kind, const std::string& message) {
    return {{"schema", kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
    return parse_list<double>(text, parse_real);
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
    return parse_list<std::size_t>(text, [](const std::string& s) {
        const double v = parse_real(s);
        if (v < 0 || v != std::floor(v)) throw Error(ErrorKind::ParseError, "not a count: '" + s + "'");
        return static_cast<std::size_t>(v);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Ordinal causal discovery"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    try {
        const std::string path = config_path(args);
        if (!path.empty()) {
            std::ifstream in(path);
            if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw Error(ErrorKind::ParseError, path + ": " + e.what());
            }
            c = j.value("config", j).get<RunConfig>();
        }

        auto optional_int = [](CLI::App* sub, const std::string& name, std::optional<int>& field, const std::string& desc) {
            sub->add_option_function<int>(name, [&field](const int& v) { field = v; }, desc);
        };
        auto common_fit = [&](CLI::App* sub) {
            sub->add_option("--link", c.link, "probit|logit")->check(CLI::IsMember({"probit", "logit"}));
            sub->add_option("--max-iter", c.max_iter, "Optimizer iteration cap");
            sub->add_option("--tol-grad", c.tol_grad, "Gradient infinity-norm tolerance");
            sub->add_option("--tol-nll", c.tol_nll, "Relative NLL change tolerance");
            sub->add_option("--param-bound", c.param_bound, "Separation guard on each coefficient");
            sub->add_option("--threads", c.threads, "Worker threads (default OCD_THREADS or all cores)");
        };
        auto common_data = [&](CLI::App* sub) {
            sub->add_option("--csv", c.csv, "Input CSV");
            sub->add_option("--levels", c.levels, "auto|l1,l2,...");
            optional_int(sub, "--discretize", c.discretize, "Quantile-discretize real columns into L levels");
            sub->add_flag("--trichotomize-zero", c.trichotomize_zero, "Code real columns as zero / low / high");
        };
        auto out_opt = [&](CLI::App* sub, const std::string& desc) { sub->add_option("--out", c.out, desc); };

        auto* fit = app.add_subcommand("fit", "Estimate a DAG from ordinal data");
        common_data(fit);
        common_fit(fit);
        fit->add_option("--search", c.search, "greedy|exhaustive")->check(CLI::IsMember({"greedy", "exhaustive"}));
        fit->add_option("--init", c.init, "empty or an edge-list file");
        optional_int(fit, "--max-parents", c.max_parents, "Cap on parents per node");
        fit->add_flag("--first-improvement", c.first_improvement, "Take the first improving move");
        fit->add_option("--seed", c.seed, "Seed (echoed; the search itself is deterministic)");
        fit->add_option("--dot", c.dot, "Write the estimated graph as DOT");
        out_opt(fit, "Write JSON here instead of stdout");

        auto* score = app.add_subcommand("score", "BIC of a given graph");
        common_data(score);
        common_fit(score);
        score->add_option("--graph", c.graph, "Edge-list file");
        out_opt(score, "Write JSON here instead of stdout");

        auto* pair = app.add_subcommand("pair", "Forced causal-direction decisions for variable pairs");
        common_data(pair);
        common_fit(pair);
        pair->add_option("--truth", c.truth, "CSV of pair,direction labels (forward|backward)");
        pair->add_option("--tsv", c.tsv, "Write the decision table as TSV");
        out_opt(pair, "Write JSON here instead of stdout");

        auto* sim = app.add_subcommand("simulate", "Sample data from a random ordinal network");
        sim->add_option_function<int>("--p", [&](const int& v) { c.p = v; }, "Number of nodes");
        optional_int(sim, "--edges", c.edges, "Number of edges (default p - 1)");
        sim->add_option_function<int>("--levels", [&](const int& v) { c.num_levels = v; }, "Levels per node");
        sim->add_option_function<double>("--sigma", [&](const double& v) { c.sigma = v; }, "Effect scale");
        sim->add_option_function<std::size_t>("--n", [&](const std::size_t& v) { c.n = v; }, "Rows");
        sim->add_option("--seed", c.seed, "Seed");
        sim->add_option("--link", c.link, "probit|logit")->check(CLI::IsMember({"probit", "logit"}));
        sim->add_option("--truth", c.truth, "Write the true graph as an edge list");
        sim->add_flag("--confounder", c.confounder, "Hidden-confounder scenario (two observed columns)");
        out_opt(sim, "Data CSV path");

        auto* disc = app.add_subcommand("discretize", "Code a real-valued CSV into ordinal levels");
        disc->add_option("--csv", c.csv, "Real-valued input CSV");
        optional_int(disc, "--discretize", c.discretize, "Number of quantile levels");
        disc->add_flag("--trichotomize-zero", c.trichotomize_zero, "Zero / low / high coding");
        out_opt(disc, "Output CSV path");

        auto* eval = app.add_subcommand("eval", "SHD between two edge lists");
        eval->add_option("--estimated", c.estimated, "Estimated edge list");
        eval->add_option("--truth", c.truth, "True edge list");
        eval->add_option("--csv", c.csv, "CSV whose header fixes the node set (optional)");
        out_opt(eval, "Write JSON here instead of stdout");

        auto* exp = app.add_subcommand("experiment", "Run a named simulation experiment");
        exp->add_option("name", c.experiment, "fig1-identifiability|shd-curve|confounder-grid|binary-null");
        common_fit(exp);
        exp->add_option("--seed", c.seed, "Seed");
        exp->add_option_function<int>("--p", [&](const int& v) { c.p = v; }, "Nodes (shd-curve)");
        optional_int(exp, "--edges", c.edges, "Edges (shd-curve, default p - 1)");
        exp->add_option_function<int>("--L,--levels", [&](const int& v) { c.num_levels = v; }, "Levels per variable");
        exp->add_option_function<std::string>("--sigmas", [&](const std::string& v) { c.sigmas = parse_real_list(v); },
                                              "List or range, e.g. 0.25,1.5 or 0.25..1.5");
        exp->add_option_function<std::string>("--ns", [&](const std::string& v) { c.ns = parse_count_list(v); },
                                              "Sample sizes, e.g. 100..1000");
        exp->add_option_function<std::size_t>("--n", [&](const std::size_t& v) { c.n = v; c.ns = std::vector<std::size_t>{v}; },
                                              "Single sample size");
        optional_int(exp, "--repeats", c.repeats, "Repeats per cell");
        optional_int(exp, "--max-parents", c.max_parents, "Cap on parents per node (shd-curve)");
        exp->add_flag("--first-improvement", c.first_improvement, "First-improvement greedy (shd-curve)");
        exp->add_flag("--no-confounder", c.no_confounder, "confounder-grid without the hidden confounder");
        exp->add_option("--out-dir", c.out_dir, "Write <name>.tsv and <name>.summary.json here");
        out_opt(exp, "Write the summary JSON here instead of stdout");

        for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
            sub->add_option("--config", "JSON run config (an echoed output document works); flags override it");
        }

        std::vector<std::string> argv = args;
        const bool named = std::any_of(argv.begin(), argv.end(), [&](const std::string& a) {
            return !app.get_subcommands([&](CLI::App* sub) { return sub->get_name() == a; }).empty();
        });
        if (!named && !c.command.empty()) argv.insert(argv.begin(), c.command);
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::Success& e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
            err << error_json("UsageError", e.what()).dump() << '\n';
            return kUserError;
        }

        c.command = app.get_subcommands().front()->get_name();
        if (c.command == "fit") return run_fit(c, out);
        if (c.command == "score") return run_score(c, out);
        if (c.command == "pair") return run_pair(c, out);
        if (c.command == "simulate") return run_simulate(c, out);
        if (c.command == "discretize") return run_discretize(c, out);
        if (c.command == "eval") return run_eval(c, out);
        return run_experiment(c, out);
    } catch (const Error& e) {
        err << error_json(std::string(to_string(e.kind())), e.what()).dump() << '\n';
        return e.kind() == ErrorKind::NumericalFailure ? kNumericalFailure : kUserError;
    } catch (const json::exception& e) {
        err << error_json("ParseError", e.what()).dump() << '\n';
        return kUserError;
    } catch (const std::exception& e) {
        err << error_json("NumericalFailure", e.what()).dump() << '\n';
        return kNumericalFailure;
    }
}

}  // namespace ocd::cli
