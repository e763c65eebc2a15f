#pragma once

#include <map>
#include <string>

namespace udwsim::dispersion {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Single-axis dispersion model n^2 = A + B/(L^2 - C) - D L^2, L in um.
// Evaluations outside [lambda_min_nm, lambda_max_nm] are domain errors.
struct SellmeierModel {
    std::string name;
    double A = 1.0, B = 0.0, C = 0.0, D = 0.0;
    double lambda_min_nm = 1.0;
    double lambda_max_nm = 1.0e9;
    std::string citation;

    double index_at_lambda_um(double lambda_um) const;
    double index(double omega) const;       // omega in rad/s
    double dn_dlambda_um(double lambda_um) const;
    double group_index(double omega) const;  // n + omega dn/domega
    double group_velocity(double omega) const;

    void require_in_window(double omega) const;

    static SellmeierModel vacuum();
};

double lambda_um_from_omega(double omega);

// Loads every record of a coefficient file (see data/ktp_sellmeier.txt for
// the field reference), keyed by axis name. Parsing is strict: unknown
// fields, missing fields or malformed numbers are errors naming the line.
std::map<std::string, SellmeierModel> load_sellmeier_file(const std::string& path);

// Convenience: the pinned data file shipped with the repository.
const std::map<std::string, SellmeierModel>& ktp_table();
std::string ktp_table_path();

}  // namespace udwsim::dispersion
