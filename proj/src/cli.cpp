#include "symphill/cli.hpp"
#include "symphill/baselines.hpp"
#include "symphill/coefficients.hpp"
#include "symphill/errors.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>

namespace symphill {

using nlohmann::json;

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t spec_hash(const std::string& text)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

static std::string hex(std::uint64_t v)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot rename output to '" + path + "': " + ec.message());
    }
}

std::string ProblemSpec::describe() const
{
    std::ostringstream os;
    os << "problem=" << family;
    if (family == "mathieu") os << " omega=" << format_double(omega) << " eps=" << format_double(eps);
    else if (family == "pascal") os << " r=" << r << " eps=" << format_double(eps);
    else if (family == "paul_trap") os << " e0=" << format_double(e0) << " e1=" << format_double(e1);
    else os << " file=" << file;
    return os.str();
}

namespace {

Matrix json_matrix(const json& j, int r)
{
    if (!j.is_array() || static_cast<int>(j.size()) != r) throw ConfigError("problem file: matrix must have r rows");
    Matrix m(r, r);
    for (int i = 0; i < r; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != r)
            throw ConfigError("problem file: matrix rows must have r entries");
        for (int k = 0; k < r; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

Eigen::VectorXd json_vector(const json& j, int r)
{
    if (!j.is_array() || static_cast<int>(j.size()) != r) throw ConfigError("problem file: vector must have r entries");
    Eigen::VectorXd v(r);
    for (int i = 0; i < r; ++i) v(i) = j[i].get<double>();
    return v;
}

double param(const json& params, const char* key, double dflt)
{
    return params.contains(key) ? params[key].get<double>() : dflt;
}

}

HillProblem problem_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("problem file: ") + e.what());
    }
    try {
        if (j.contains("preset")) {
            std::string name = j["preset"].get<std::string>();
            json params = j.value("params", json::object());
            if (name == "mathieu") return mathieu(param(params, "omega", 5), param(params, "eps", 1));
            if (name == "pascal") return pascal_hill(params.value("r", 5), param(params, "eps", 5));
            if (name == "paul_trap") return paul_trap(param(params, "e0", 1), param(params, "e1", 0));
            throw ConfigError("problem file: unknown preset '" + name + "'");
        }
        if (!j.contains("custom")) throw ConfigError("problem file: needs 'preset' or 'custom'");
        const auto& c = j["custom"];
        double period = c.at("period").get<double>();
        if (!(period > 0)) throw ConfigError("problem file: period must be positive");
        Matrix constant;
        std::vector<std::pair<double, Matrix>> cosines;
        if (c.contains("constant")) {
            int r = static_cast<int>(c["constant"].size());
            constant = json_matrix(c["constant"], r);
        }
        int r = constant.size() ? static_cast<int>(constant.rows()) : c.value("dim", 0);
        if (c.contains("cosines"))
            for (const auto& term : c["cosines"]) {
                if (r == 0) r = static_cast<int>(term.at("matrix").size());
                cosines.emplace_back(term.at("frequency").get<double>(), json_matrix(term.at("matrix"), r));
            }
        if (r < 1) throw ConfigError("problem file: cannot determine the dimension");
        if (constant.size() == 0) constant = Matrix::Zero(r, r);
        HillProblem p;
        p.name = "custom";
        p.dim = r;
        p.period = period;
        p.evaluator = [constant, cosines](double t) {
            Matrix m = constant;
            for (const auto& [w, a] : cosines) m += std::cos(w * t) * a;
            return m;
        };
        bool sym = (constant - constant.transpose()).norm() == 0;
        for (const auto& [w, a] : cosines) sym = sym && (a - a.transpose()).norm() == 0;
        p.symmetric = c.value("symmetric", sym);
        if (p.symmetric && !sym) throw ConfigError("problem file: declared symmetric but matrices are not");
        if (c.contains("forcing")) {
            const auto& f = c["forcing"];
            Eigen::VectorXd f0 = f.contains("constant") ? json_vector(f["constant"], r) : Eigen::VectorXd::Zero(r);
            std::vector<std::pair<double, Eigen::VectorXd>> fc;
            if (f.contains("cosines"))
                for (const auto& term : f["cosines"])
                    fc.emplace_back(term.at("frequency").get<double>(), json_vector(term.at("vector"), r));
            p.forcing = [f0, fc](double t) {
                Eigen::VectorXd v = f0;
                for (const auto& [w, a] : fc) v += std::cos(w * t) * a;
                return v;
            };
        }
        return p;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("problem file: ") + e.what());
    }
}

HillProblem make_problem(const ProblemSpec& s)
{
    if (s.family == "mathieu") return mathieu(s.omega, s.eps);
    if (s.family == "pascal") {
        if (s.r < 1) throw ConfigError("pascal: r must be positive");
        return pascal_hill(s.r, s.eps);
    }
    if (s.family == "paul_trap") return paul_trap(s.e0, s.e1);
    if (s.family == "file") {
        std::ifstream in(s.file);
        if (!in) throw ConfigError("cannot open problem file '" + s.file + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return problem_from_json(ss.str());
    }
    throw ConfigError("unknown problem '" + s.family + "'");
}

static std::string options_text(const std::string& method, const MethodOptions& o)
{
    std::ostringstream os;
    os << "method=" << method << " exp_order=" << o.exp_order << " tol=" << format_double(o.tol);
    if (!o.coeff_file.empty()) os << " coeff_file=" << o.coeff_file;
    return os.str();
}

double ScanSpec::value(long j) const
{
    if (delta) return min + j * *delta;
    if (count == 1) return min;
    return min + (max - min) * j / (count - 1);
}

std::vector<ScanPoint> compute_scan(const ScanSpec& spec)
{
    if (spec.count < 1) throw ConfigError("scan: count must be at least 1");
    if (spec.sweep != "omega" && spec.sweep != "eps" && spec.sweep != "e0" && spec.sweep != "e1")
        throw ConfigError("scan: unknown sweep parameter '" + spec.sweep + "'");
    auto method = make_method(spec.method, spec.options);
    std::vector<ScanPoint> pts(spec.count);
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto worker = [&] {
        while (true) {
            long j = next++;
            if (j >= spec.count) return;
            try {
                ProblemSpec ps = spec.problem;
                double v = spec.value(j);
                if (spec.sweep == "omega") ps.omega = v;
                else if (spec.sweep == "eps") ps.eps = v;
                else if (spec.sweep == "e0") ps.e0 = v;
                else ps.e1 = v;
                auto p = make_problem(ps);
                auto phi = monodromy(p, *method, spec.steps_per_period);
                pts[j].value = v;
                pts[j].report = stability(phi.state(), spec.tol_classify);
                pts[j].cost_thirds = phi.ledger.thirds();
                pts[j].uncorrected = phi.uncorrected_exponentials;
            } catch (...) {
                std::lock_guard<std::mutex> lk(fail_mu);
                if (!failure) failure = std::current_exception();
                next = spec.count;
                return;
            }
        }
    };
    int nt = std::max(1, spec.threads);
    std::vector<std::thread> pool;
    for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return pts;
}

std::string scan_csv(const ScanSpec& spec, const std::vector<ScanPoint>& pts)
{
    std::ostringstream key;
    key << spec.problem.describe() << " sweep=" << spec.sweep << " min=" << format_double(spec.min)
        << " max=" << format_double(spec.max) << " count=" << spec.count;
    if (spec.delta) key << " delta=" << format_double(*spec.delta);
    key << " " << options_text(spec.method, spec.options) << " steps_per_period=" << spec.steps_per_period
        << " tol_classify=" << format_double(spec.tol_classify);
    std::ostringstream os;
    os << "# symphill " << version << " " << key.str() << " spec_hash=" << hex(spec_hash(key.str())) << "\n";
    os << "sweep_value,eig_index,re,im,abs_minus_one,log_abs_minus_one_delta,classification,cost_thirds\n";
    for (const auto& p : pts) {
        const auto& r = p.report;
        for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
            os << format_double(p.value) << "," << i << "," << format_double(r.eigenvalues[i].real()) << ","
               << format_double(r.eigenvalues[i].imag()) << "," << format_double(r.abs_minus_one[i]) << ","
               << format_double(log_distance(r.abs_minus_one[i])) << "," << to_string(r.per_eigenvalue[i]) << ","
               << p.cost_thirds << "\n";
        }
    }
    return os.str();
}

void run_scan(const ScanSpec& spec) { write_output(spec.out, scan_csv(spec, compute_scan(spec))); }

ConvergeResult compute_converge(const ConvergeSpec& spec)
{
    auto p = make_problem(spec.problem);
    MethodOptions ref_opts = spec.options;
    ref_opts.coeff_file = spec.ref_coeff_file;
    auto ref_method = make_method(spec.ref_method, ref_opts);
    BlockPropagator ref(p.dim);
    ref_method->integrate(p, 0, p.period / spec.ref_steps, spec.ref_steps, ref);
    ConvergeResult res;
    for (const auto& name : spec.methods) {
        auto m = make_method(name, spec.options);
        std::vector<double> hs, errs;
        for (long n : spec.steps) {
            if (n < 1) throw ConfigError("converge: step counts must be positive");
            BlockPropagator phi(p.dim);
            double h = p.period / n;
            m->integrate(p, 0, h, n, phi);
            ConvergeRow row{name, n, h, norm1(phi.state() - ref.state()), phi.ledger.thirds()};
            if (!std::isfinite(row.error)) throw NumericalError("converge: non-finite error for " + name);
            hs.push_back(h);
            errs.push_back(row.error);
            res.rows.push_back(row);
        }
        res.slopes.emplace_back(name, fit_slope(hs, errs));
    }
    return res;
}

std::string converge_csv(const ConvergeSpec& spec, const ConvergeResult& res)
{
    std::ostringstream key;
    key << spec.problem.describe() << " ref=" << spec.ref_method << "@" << spec.ref_steps;
    if (!spec.ref_coeff_file.empty()) key << " ref_coeff_file=" << spec.ref_coeff_file;
    key << " methods=";
    for (const auto& m : spec.methods) key << m << ";";
    key << " steps=";
    for (long n : spec.steps) key << n << ";";
    key << " " << options_text("-", spec.options);
    std::ostringstream os;
    os << "# symphill " << version << " " << key.str() << " spec_hash=" << hex(spec_hash(key.str())) << "\n";
    os << "method,h,error_l1,cost_thirds\n";
    for (const auto& r : res.rows)
        os << r.method << "," << format_double(r.h) << "," << format_double(r.error) << "," << r.cost_thirds << "\n";
    for (const auto& [m, s] : res.slopes) os << "# fit method=" << m << " slope=" << format_double(s) << "\n";
    return os.str();
}

void run_converge(const ConvergeSpec& spec) { write_output(spec.out, converge_csv(spec, compute_converge(spec))); }

std::string integrate_output(const IntegrateSpec& spec)
{
    auto p = make_problem(spec.problem);
    auto m = make_method(spec.method, spec.options);
    double t_end = spec.t_end ? *spec.t_end : p.period;
    long n = step_count(0, t_end, spec.h);
    std::ostringstream os;
    std::string key = spec.problem.describe() + " " + options_text(spec.method, spec.options) +
                      " h=" + format_double(spec.h) + " t_end=" + format_double(t_end);
    os << "# symphill " << version << " " << key << " spec_hash=" << hex(spec_hash(key)) << "\n";
    BlockPropagator phi(p.dim);
    int r = p.dim;
    if (spec.initial.empty()) {
        m->integrate(p, 0, spec.h, n, phi);
        for (int i = 0; i < 2 * r; ++i) {
            for (int k = 0; k < 2 * r; ++k) os << (k ? "," : "") << format_double(phi.state()(i, k));
            os << "\n";
        }
    } else {
        if (static_cast<int>(spec.initial.size()) != 2 * r)
            throw ConfigError("integrate: initial vector needs 2r entries");
        Eigen::VectorXd z0 = Eigen::Map<const Eigen::VectorXd>(spec.initial.data(), 2 * r);
        os << "t";
        for (int i = 0; i < r; ++i) os << ",x" << i + 1;
        for (int i = 0; i < r; ++i) os << ",v" << i + 1;
        os << "\n";
        auto row = [&](double t, const Eigen::VectorXd& z) {
            os << format_double(t);
            for (int i = 0; i < 2 * r; ++i) os << "," << format_double(z(i));
            os << "\n";
        };
        row(0, z0);
        m->integrate(p, 0, spec.h, n, phi,
                     [&](long, double t, const BlockPropagator& ph) { row(t, ph.state() * z0); });
    }
    os << "# symplectic_defect=" << format_double(symplectic_defect(phi.state()))
       << " cost_thirds=" << phi.ledger.thirds() << " cost=" << phi.ledger.to_string()
       << " uncorrected_exponentials=" << phi.uncorrected_exponentials << " steps=" << n << "\n";
    return os.str();
}

void run_integrate(const IntegrateSpec& spec) { write_output(spec.out, integrate_output(spec)); }

std::string monodromy_output(const MonodromySpec& spec)
{
    auto p = make_problem(spec.problem);
    auto m = make_method(spec.method, spec.options);
    auto phi = monodromy(p, *m, spec.steps_per_period);
    auto rep = stability(phi.state(), spec.tol_classify);
    std::string key = spec.problem.describe() + " " + options_text(spec.method, spec.options) +
                      " steps_per_period=" + std::to_string(spec.steps_per_period);
    std::ostringstream os;
    os << "# symphill " << version << " " << key << " spec_hash=" << hex(spec_hash(key)) << "\n";
    os << "eig_index,re,im,abs_minus_one,log_abs_minus_one_delta,classification\n";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
        os << i << "," << format_double(rep.eigenvalues[i].real()) << "," << format_double(rep.eigenvalues[i].imag())
           << "," << format_double(rep.abs_minus_one[i]) << "," << format_double(log_distance(rep.abs_minus_one[i]))
           << "," << to_string(rep.per_eigenvalue[i]) << "\n";
    os << "# overall=" << to_string(rep.overall) << " pairing_defect=" << format_double(rep.pairing_defect)
       << " det_minus_one=" << format_double(rep.det_minus_one)
       << " symplectic_defect=" << format_double(rep.symplectic_defect) << " cost_thirds=" << phi.ledger.thirds()
       << " " << m->metadata() << "\n";
    return os.str();
}

void run_monodromy(const MonodromySpec& spec) { write_output(spec.out, monodromy_output(spec)); }

}
