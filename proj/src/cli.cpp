#include "qbounds/cli.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qbounds/nonlocal.hpp"
#include "qbounds/sweep.hpp"

namespace qbounds {

namespace {

[[noreturn]] void spec_error(int line, const std::string &msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::vector<cplx> parse_matrix_row(const std::string &line, int lineno) {
    std::istringstream in(line);
    std::vector<double> nums;
    std::string tok;
    while (in >> tok) {
        try {
            nums.push_back(parse_double(tok));
        } catch (const ConfigError &e) {
            spec_error(lineno, e.what());
        }
    }
    if (nums.empty() || nums.size() % 2 != 0)
        spec_error(lineno, "matrix rows need an even number of values (re im pairs)");
    std::vector<cplx> row;
    for (std::size_t i = 0; i < nums.size(); i += 2)
        row.emplace_back(nums[i], nums[i + 1]);
    return row;
}

RealVector padded(const std::vector<double> &v, int dim, const char *what) {
    if (static_cast<int>(v.size()) > dim)
        throw ConfigError(std::string(what) + " has " + std::to_string(v.size()) + " entries but dim is " +
                          std::to_string(dim));
    RealVector out = RealVector::Zero(dim);
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

std::string join(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + format_double(v[i]);
    return s;
}

std::string csv_field(const std::string &s) {
    if (s.empty())
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + path + " for writing");
    f << content;
    f.close();
    if (!f)
        throw IoError("failed writing " + path);
}

} // namespace

OperatorSpec parse_operator_spec(std::string_view text) {
    OperatorSpec spec;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    std::optional<Matrix> *block = nullptr;
    std::string block_name;
    int block_start = 0;
    std::vector<std::vector<cplx>> rows;
    bool model_seen = false;

    auto close_block = [&]() {
        const auto n = static_cast<Eigen::Index>(rows.size());
        for (const auto &r : rows)
            if (static_cast<Eigen::Index>(r.size()) != n)
                spec_error(block_start, "matrix " + block_name + " is not square");
        Matrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                m(i, j) = rows[i][j];
        *block = m;
        block = nullptr;
        rows.clear();
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
        if (line.empty())
            continue;
        if (block) {
            if (line == "end")
                close_block();
            else
                rows.push_back(parse_matrix_row(line, lineno));
            continue;
        }
        if (line.rfind("matrix", 0) == 0) {
            block_name = trim(std::string_view(line).substr(6));
            if (block_name == "K")
                block = &spec.K;
            else if (block_name == "K1")
                block = &spec.K1;
            else if (block_name == "basis")
                block = &spec.basis;
            else if (block_name == "basis1")
                block = &spec.basis1;
            else
                spec_error(lineno, "unknown matrix '" + block_name + "' (expected K, K1, basis or basis1)");
            if (block->has_value())
                spec_error(lineno, "matrix " + block_name + " given twice");
            block_start = lineno;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            spec_error(lineno, "expected 'key = value' or 'matrix NAME'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        try {
            if (key == "model") {
                model_seen = true;
                if (value == "oscillator")
                    spec.model = OperatorSpec::Model::oscillator;
                else if (value == "nonlocal")
                    spec.model = OperatorSpec::Model::nonlocal;
                else if (value == "explicit")
                    spec.model = OperatorSpec::Model::explicit_matrices;
                else
                    throw ConfigError("unknown model '" + value + "'");
            } else if (key == "state") {
                if (value == "vacuum") {
                    spec.state = OperatorSpec::State::vacuum;
                } else if (value.rfind("coherent:", 0) == 0) {
                    spec.state = OperatorSpec::State::coherent;
                    spec.alpha = parse_double(std::string_view(value).substr(9));
                } else if (value.rfind("probs:", 0) == 0) {
                    spec.state = OperatorSpec::State::probs;
                    spec.probs = parse_double_list(std::string_view(value).substr(6));
                } else {
                    throw ConfigError("unknown state '" + value + "'");
                }
            } else if (key == "probs1") {
                spec.probs1 = parse_double_list(value);
            } else if (key == "t") {
                spec.t = parse_double(value);
            } else if (key == "nu") {
                spec.nu = parse_int(value);
            } else if (key == "dim") {
                spec.dim = parse_int(value);
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError &e) {
            spec_error(lineno, e.what());
        }
    }
    if (block)
        spec_error(block_start, "matrix " + block_name + " is missing 'end'");
    if (!model_seen)
        throw ConfigError("spec does not name a model");
    if (spec.model == OperatorSpec::Model::explicit_matrices) {
        if (!spec.K)
            throw ConfigError("explicit model needs 'matrix K'");
        if (spec.state != OperatorSpec::State::probs)
            throw ConfigError("explicit model needs 'state = probs:...'");
    } else if (spec.K || spec.K1 || spec.basis || spec.basis1) {
        throw ConfigError("matrix blocks are only allowed with model = explicit");
    }
    if (spec.model == OperatorSpec::Model::nonlocal && spec.state == OperatorSpec::State::probs)
        throw ConfigError("nonlocal model takes vacuum or coherent states");
    if (!spec.probs1.empty() && spec.state != OperatorSpec::State::probs)
        throw ConfigError("probs1 requires state = probs:...");
    return spec;
}

std::string OperatorSpec::describe() const {
    std::ostringstream s;
    s << "model = "
      << (model == Model::oscillator ? "oscillator" : model == Model::nonlocal ? "nonlocal" : "explicit");
    s << "; state = ";
    switch (state) {
    case State::vacuum:
        s << "vacuum";
        break;
    case State::coherent:
        s << "coherent:" << format_double(alpha);
        break;
    case State::probs:
        s << "probs:" << join(probs);
        break;
    }
    if (!probs1.empty())
        s << "; probs1 = " << join(probs1);
    s << "; t = " << format_double(t) << "; nu = " << nu;
    if (dim)
        s << "; dim = " << *dim;
    if (K)
        s << "; matrices = K" << (K1 ? ",K1" : "") << (basis ? ",basis" : "") << (basis1 ? ",basis1" : "");
    return s.str();
}

BoundsRun run_bounds(const OperatorSpec &spec, const SweepConfig &cfg) {
    cfg.validate();
    if (spec.nu < 1)
        throw ConfigError("nu must be >= 1");
    BoundOptions options;
    options.hbar = cfg.hbar;
    options.nu = spec.nu;
    const double eta = cfg.eta;
    std::vector<std::string> extra_warnings;

    auto pure = [&](const StateVector &psi, const Vector &psi1) {
        return deformed_density_from_state(DeformedState(psi, psi1, eta));
    };

    std::optional<DeformedOperator> dop;
    std::optional<DeformedDensity> dden;

    if (spec.model == OperatorSpec::Model::explicit_matrices) {
        const Matrix &K = *spec.K;
        const auto n = K.rows();
        const int dim = static_cast<int>(n);
        auto check = [&](const std::optional<Matrix> &m, const char *name) {
            if (m && m->rows() != n)
                throw ConfigError(std::string("matrix ") + name + " does not match the size of K");
        };
        check(spec.K1, "K1");
        check(spec.basis, "basis");
        check(spec.basis1, "basis1");
        if (static_cast<int>(spec.probs.size()) != dim)
            throw ConfigError("probs must list one entry per basis vector (" + std::to_string(dim) + ")");
        dop.emplace(FockOperator(K), FockOperator(spec.K1.value_or(Matrix::Zero(n, n))), eta);
        dden.emplace(assemble_deformed_density(padded(spec.probs, dim, "probs"), padded(spec.probs1, dim, "probs1"),
                                               spec.basis.value_or(Matrix::Identity(n, n)),
                                               spec.basis1.value_or(Matrix::Zero(n, n))));
    } else if (spec.model == OperatorSpec::Model::oscillator) {
        const int dim = spec.dim.value_or(cfg.dim);
        if (dim < 2)
            throw ConfigError("dim must be >= 2");
        const FockOperator H = number_op(dim) + FockOperator::identity(dim) * cplx{0.5, 0.0};
        dop.emplace(H, FockOperator::zero(dim), eta);
        if (spec.state == OperatorSpec::State::probs) {
            dden.emplace(assemble_deformed_density(padded(spec.probs, dim, "probs"),
                                                   padded(spec.probs1, dim, "probs1"), Matrix::Identity(dim, dim),
                                                   Matrix::Zero(dim, dim)));
        } else {
            const double alpha = spec.state == OperatorSpec::State::coherent ? spec.alpha : 0.0;
            dden.emplace(pure(evolved_coherent_state(spec.t, alpha, dim, cfg.tail_tol), Vector::Zero(dim)));
        }
    } else {
        const int dim = spec.dim.value_or(cfg.dim);
        const NonlocalModel model(eta, cfg.a2, dim);
        if (!model.first_order_regime())
            extra_warnings.push_back("eta = " + format_double(eta) +
                                     " is outside the first-order regime of the nonlocal model");
        const double alpha = spec.state == OperatorSpec::State::coherent ? spec.alpha : 0.0;
        auto [H, H1] = hamiltonians(dim);
        dop.emplace(H, H1, eta);
        dden.emplace(pure(evolved_coherent_state(spec.t, alpha, dim, cfg.tail_tol),
                          psi1_state(spec.t, alpha, cfg.a2, dim, cfg.tail_tol)));
        // Mean-energy bounds follow the closed-form energies.
        const auto q = closed_form_energies(spec.t, alpha, eta);
        options.mean_override = MeanInputs{q.E0, q.E1 + q.E2, -q.E0 * q.n_t};
    }

    BoundsRun run{compute_bound_report(*dden, *dop, options), spec.describe()};
    run.report.warnings.insert(run.report.warnings.end(), extra_warnings.begin(), extra_warnings.end());
    return run;
}

void write_bounds_csv(std::ostream &out, const SweepConfig &cfg, const BoundsRun &run) {
    const auto &r = run.report;
    out << "# qbounds bounds: eta = 0 baselines and first-order modified values\n" << cfg.echo();
    out << "# spec: " << run.description << '\n';
    out << "# report: hbar = " << format_double(r.hbar) << ", eta = " << format_double(r.eta) << ", nu = " << r.nu
        << '\n';
    for (const auto &w : r.warnings)
        out << "# warning: " << w << '\n';
    out << "bound,baseline,modified,note\n";
    auto value = [](const std::optional<double> &v) { return v ? format_double(*v) : std::string(); };
    for (const auto &[name, entry] : r.entries())
        out << name << ',' << value(entry->baseline) << ',' << value(entry->modified) << ','
            << csv_field(entry->note) << '\n';
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qbounds: standard and first-order modified quantum information bounds"};
    app.require_subcommand(1);

    struct Common {
        std::string config;
        std::string out;
        int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        std::map<std::string, std::string> values;
        std::map<std::string, CLI::Option *> flags;
    };
    Common fig1_opts, bounds_opts, audit_opts;
    std::string spec_path;

    auto add_common = [](CLI::App *sub, Common &c) {
        sub->add_option("--config", c.config, "key = value config file");
        sub->add_option("--out", c.out, "output CSV path (default <command>.csv)");
        sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
        for (const auto &key : config_keys()) {
            std::string names = "--" + key;
            std::string hyphen = key;
            std::replace(hyphen.begin(), hyphen.end(), '_', '-');
            if (hyphen != key)
                names += ",--" + hyphen;
            c.flags[key] = sub->add_option(names, c.values[key], "override config key " + key);
        }
    };

    auto *fig1 = app.add_subcommand("fig1", "B_t/E0 and time bounds over the (alpha, t) grid");
    auto *bounds = app.add_subcommand("bounds", "bound report for an operator spec file");
    auto *audit = app.add_subcommand("audit", "Fock-space audit of the closed-form energies");
    add_common(fig1, fig1_opts);
    add_common(bounds, bounds_opts);
    add_common(audit, audit_opts);
    bounds->add_option("--spec", spec_path, "operator spec file")->required();

    std::vector<std::string> argv_store{"qbounds"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    CLI::App *sub = fig1->parsed() ? fig1 : bounds->parsed() ? bounds : audit;
    Common &c = fig1->parsed() ? fig1_opts : bounds->parsed() ? bounds_opts : audit_opts;
    const std::string command = sub->get_name();

    try {
        SweepConfig cfg;
        if (!c.config.empty())
            cfg = parse_config_text(read_file(c.config));
        for (const auto &key : config_keys())
            if (c.flags[key]->count() > 0) {
                try {
                    set_config_key(cfg, key, c.values[key]);
                } catch (const ConfigError &e) {
                    throw ConfigError("--" + key + ": " + e.what());
                }
            }
        cfg.validate();
        std::string path = !c.out.empty() ? c.out : !cfg.output_path.empty() ? cfg.output_path : command + ".csv";

        std::ostringstream body;
        std::size_t rows = 0;
        if (command == "fig1") {
            auto r = fig1_rows_parallel(cfg, c.jobs);
            rows = r.size();
            write_fig1_csv(body, cfg, r);
        } else if (command == "audit") {
            auto r = audit_rows_parallel(cfg, c.jobs);
            rows = r.size();
            write_audit_csv(body, cfg, r);
        } else {
            auto spec = parse_operator_spec(read_file(spec_path));
            auto run = run_bounds(spec, cfg);
            rows = run.report.entries().size();
            write_bounds_csv(body, cfg, run);
            for (const auto &w : run.report.warnings)
                err << "warning: " << w << '\n';
        }
        write_file(path, body.str());
        out << command << ": wrote " << rows << " rows to " << path << '\n';
        return exit_ok;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const IoError &e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const Error &e) {
        err << "numeric error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return exit_numeric;
    }
}

} // namespace qbounds
