#include "symphill/coefficients.hpp"
#include "symphill/errors.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace symphill {

using nlohmann::json;

double parse_coefficient(const std::string& text)
{
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw ConfigError("coefficient: cannot parse '" + text + "'");
        }
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw ConfigError("coefficient: trailing characters in '" + text + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return num(text);
    double q = num(text.substr(slash + 1));
    if (q == 0) throw ConfigError("coefficient: zero denominator in '" + text + "'");
    return num(text.substr(0, slash)) / q;
}

namespace {

double value(const json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_coefficient(j.get<std::string>());
    throw ConfigError("coefficient: expected a number or a \"p/q\" string");
}

std::vector<double> vec(const json& j, const char* what)
{
    if (!j.is_array()) throw ConfigError(std::string("coefficient file: '") + what + "' must be an array");
    std::vector<double> out;
    for (const auto& e : j) out.push_back(value(e));
    return out;
}

std::vector<std::vector<double>> mat(const json& j, const char* what)
{
    if (!j.is_array()) throw ConfigError(std::string("coefficient file: '") + what + "' must be an array of rows");
    std::vector<std::vector<double>> out;
    for (const auto& row : j) out.push_back(vec(row, what));
    return out;
}

}

CoefficientFile parse_coefficients(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("coefficient file: ") + e.what());
    }
    if (!j.contains("type") || !j.contains("order") || !j.contains("data"))
        throw ConfigError("coefficient file: needs type, order and data");
    CoefficientFile f;
    f.type = j["type"].get<std::string>();
    f.order = j["order"].get<int>();
    const auto& d = j["data"];
    if (f.type == "butcher") {
        std::vector<double> c;
        if (d.contains("c")) c = vec(d["c"], "c");
        f.butcher = make_tableau(mat(d.at("a"), "a"), vec(d.at("b"), "b"), c, f.order);
    } else if (f.type == "splitting") {
        f.splitting = make_splitting(vec(d.at("a"), "a"), vec(d.at("b"), "b"), f.order);
    } else if (f.type == "cf") {
        f.cf_rows = mat(d.is_array() ? d : d.at("rows"), "rows");
        if (f.cf_rows.empty()) throw ConfigError("coefficient file: cf table has no rows");
        double s1 = 0;
        for (const auto& r : f.cf_rows) {
            if (r.empty()) throw ConfigError("coefficient file: empty cf row");
            s1 += r[0];
        }
        if (std::abs(s1 - 1) > 1e-14) throw ConfigError("coefficient file: cf first-column sum must be one");
    } else if (f.type == "phi5_8") {
        auto x = vec(d.at("x"), "x");
        if (x.size() != 16) throw ConfigError("coefficient file: phi5_8 needs 16 coefficients");
        std::copy(x.begin(), x.end(), f.phi5.begin());
        if (std::abs(x[0] + 2 * x[2] + 2 * x[6] - 1) > 1e-12)
            throw ConfigError("coefficient file: phi5_8 time coefficients must sum to one");
    } else {
        throw ConfigError("coefficient file: unknown type '" + f.type + "'");
    }
    return f;
}

CoefficientFile load_coefficients(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open coefficient file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_coefficients(ss.str());
}

std::unique_ptr<Method> method_from_coefficients(const CoefficientFile& f, int exp_order)
{
    if (f.type == "butcher") return std::make_unique<ExplicitRkMethod>(f.butcher, "rk");
    if (f.type == "splitting") return std::make_unique<SplittingMethod>(f.splitting, "splitting");
    if (f.type == "cf") return std::make_unique<CommutatorFreeScheme>(f.cf_rows, f.order, exp_order);
    if (f.type == "phi5_8") return std::make_unique<Phi5Order8>(f.phi5, exp_order);
    throw ConfigError("unknown coefficient type '" + f.type + "'");
}

double fit_slope(const std::vector<double>& h, const std::vector<double>& err, double floor)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(err[i] > floor) || !std::isfinite(err[i])) continue;
        double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nan("");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

OrderFit measure_order(const Method& m, const std::vector<long>& steps)
{
    auto p = mathieu(5, 1);
    BlockPropagator ref(1);
    Phi2Order6().integrate(p, 0, p.period / 2000, 2000, ref);
    OrderFit fit;
    std::vector<double> hs;
    for (long n : steps) {
        BlockPropagator phi(1);
        double h = p.period / n;
        m.integrate(p, 0, h, n, phi);
        fit.steps.push_back(n);
        fit.errors.push_back(norm1(phi.state() - ref.state()));
        hs.push_back(h);
    }
    fit.slope = fit_slope(hs, fit.errors);
    return fit;
}

OrderFit verify_declared_order(const Method& m)
{
    auto fit = measure_order(m);
    if (!(fit.slope >= m.order() - 0.5)) {
        std::ostringstream os;
        os << m.name() << ": declared order " << m.order() << " but measured slope " << fit.slope;
        throw ConfigError(os.str());
    }
    return fit;
}

}
