#pragma once

#include <array>
#include <cstddef>

namespace seasoncast {

// Month on the absolute axis used throughout the pipeline: 1 = January 2002.
struct MonthIndex {
    int absolute = 1;

    int calendar_month() const { return (absolute - 1) % 12 + 1; }  // 1..12
    int year() const { return 2002 + (absolute - 1) / 12; }
    MonthIndex plus(int months) const { return MonthIndex{absolute + months}; }

    static MonthIndex from_year_month(int year, int month);

    bool operator==(const MonthIndex&) const = default;
};

// Linear pre/postprocessing: MWh values are divided by `factor` so network
// inputs stay in [0,1], and predictions are multiplied back.
struct ScalerConfig {
    double factor = 5e5;  // MWh
};

// Divides by the factor. Throws std::domain_error on negative input and
// warns on stderr when the scaled value leaves [0,1].
double scale(double value_mwh, const ScalerConfig& cfg);

// Multiplies by the factor.
double unscale(double scaled, const ScalerConfig& cfg);

// Complementary fuzzy membership of a month in the two coarse seasons.
struct SeasonEncoding {
    double winter = 0.0;
    double summer = 0.0;
};

// Winter membership degree per calendar month (index 0 = January).
using MembershipTable = std::array<double, 12>;

// Triangular shape: peak 1 at January, trough 0 at July, linear in between.
MembershipTable default_membership_table();

SeasonEncoding season_membership(MonthIndex m);

// Same lookup against a caller-supplied winter table; summer = 1 - winter.
// Shifted tables express early/late season variants without retraining.
SeasonEncoding season_membership_custom(MonthIndex m, const MembershipTable& winter_table);

// Season handling for the window builder and the predictors.
struct SeasonConfig {
    bool enabled = true;
    MembershipTable winter_table = default_membership_table();

    SeasonEncoding encode(MonthIndex m) const { return season_membership_custom(m, winter_table); }
};

}  // namespace seasoncast
