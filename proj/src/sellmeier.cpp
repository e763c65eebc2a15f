#include "udwsim/sellmeier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace udwsim::dispersion {

double lambda_um_from_omega(double omega) {
    if (!(omega > 0.0)) throw std::domain_error("frequency must be positive");
    return 2.0 * M_PI * kSpeedOfLight / omega * 1e6;
}

void SellmeierModel::require_in_window(double omega) const {
    const double lam_nm = lambda_um_from_omega(omega) * 1e3;
    if (lam_nm < lambda_min_nm || lam_nm > lambda_max_nm) {
        std::ostringstream os;
        os << name << ": wavelength " << lam_nm << " nm outside validity window ["
           << lambda_min_nm << ", " << lambda_max_nm << "] nm";
        throw std::domain_error(os.str());
    }
}

double SellmeierModel::index_at_lambda_um(double lambda_um) const {
    const double l2 = lambda_um * lambda_um;
    const double n2 = A + B / (l2 - C) - D * l2;
    if (!(n2 > 1.0)) {
        std::ostringstream os;
        os << name << ": n^2 = " << n2 << " <= 1 at " << lambda_um
           << " um (outside the physical range of this model)";
        throw std::domain_error(os.str());
    }
    return std::sqrt(n2);
}

double SellmeierModel::index(double omega) const {
    require_in_window(omega);
    return index_at_lambda_um(lambda_um_from_omega(omega));
}

double SellmeierModel::dn_dlambda_um(double lambda_um) const {
    const double l2 = lambda_um * lambda_um;
    const double n = index_at_lambda_um(lambda_um);
    const double denom = l2 - C;
    return -lambda_um * (B / (denom * denom) + D) / n;
}

double SellmeierModel::group_index(double omega) const {
    require_in_window(omega);
    const double lam = lambda_um_from_omega(omega);
    // Ng = n - lambda dn/dlambda = n + omega dn/domega
    return index_at_lambda_um(lam) - lam * dn_dlambda_um(lam);
}

double SellmeierModel::group_velocity(double omega) const {
    const double ng = group_index(omega);
    if (!(ng > 0.0))
        throw std::domain_error(name + ": nonpositive group index (anomalous region)");
    return kSpeedOfLight / ng;
}

SellmeierModel SellmeierModel::vacuum() {
    SellmeierModel m;
    m.name = "vacuum";
    m.A = 1.0 + 1e-30;  // keep n^2 > 1 strictly
    m.lambda_min_nm = 1e-3;
    m.lambda_max_nm = 1e12;
    m.citation = "n = 1";
    return m;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& why) {
    std::ostringstream os;
    os << path << ":" << line << ": " << why;
    throw std::runtime_error(os.str());
}

}  // namespace

std::map<std::string, SellmeierModel> load_sellmeier_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open Sellmeier file: " + path);
    std::map<std::string, SellmeierModel> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line.substr(0, line.find('#'));
        if (body.find_first_not_of(" \t\r") == std::string::npos) continue;

        SellmeierModel m;
        bool got_axis = false, got_a = false, got_b = false, got_c = false,
             got_d = false, got_window = false, got_cite = false;
        std::istringstream is(body);
        std::string tok;
        while (is >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) parse_fail(path, lineno, "expected key=value, got '" + tok + "'");
            const std::string key = tok.substr(0, eq);
            std::string val = tok.substr(eq + 1);
            try {
                if (key == "axis") { m.name = val; got_axis = true; }
                else if (key == "A") { m.A = std::stod(val); got_a = true; }
                else if (key == "B") { m.B = std::stod(val); got_b = true; }
                else if (key == "C") { m.C = std::stod(val); got_c = true; }
                else if (key == "D") { m.D = std::stod(val); got_d = true; }
                else if (key == "window_nm") {
                    const auto colon = val.find(':');
                    if (colon == std::string::npos)
                        parse_fail(path, lineno, "window_nm expects <min>:<max>");
                    m.lambda_min_nm = std::stod(val.substr(0, colon));
                    m.lambda_max_nm = std::stod(val.substr(colon + 1));
                    if (!(m.lambda_min_nm < m.lambda_max_nm))
                        parse_fail(path, lineno, "empty validity window");
                    got_window = true;
                } else if (key == "citation") {
                    if (val.size() < 1 || val.front() != '"')
                        parse_fail(path, lineno, "citation must be quoted");
                    std::string rest = val.substr(1);
                    while (rest.find('"') == std::string::npos) {
                        std::string more;
                        if (!(is >> more)) parse_fail(path, lineno, "unterminated citation");
                        rest += " " + more;
                    }
                    m.citation = rest.substr(0, rest.find('"'));
                    got_cite = true;
                } else {
                    parse_fail(path, lineno, "unknown field '" + key + "'");
                }
            } catch (const std::invalid_argument&) {
                parse_fail(path, lineno, "malformed number in '" + tok + "'");
            }
        }
        if (!(got_axis && got_a && got_b && got_c && got_d && got_window && got_cite))
            parse_fail(path, lineno, "record missing required fields");
        out[m.name] = std::move(m);
    }
    if (out.empty()) throw std::runtime_error(path + ": no records");
    return out;
}

std::string ktp_table_path() {
    return std::string(UDWSIM_DATA_DIR) + "/ktp_sellmeier.txt";
}

const std::map<std::string, SellmeierModel>& ktp_table() {
    static const std::map<std::string, SellmeierModel> table =
        load_sellmeier_file(ktp_table_path());
    return table;
}

}  // namespace udwsim::dispersion
