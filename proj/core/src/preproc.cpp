#include "seasoncast/preproc.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace seasoncast {

MonthIndex MonthIndex::from_year_month(int year, int month) {
    if (month < 1 || month > 12) {
        throw std::domain_error("month out of range 1..12: " + std::to_string(month));
    }
    int absolute = (year - 2002) * 12 + month;
    if (absolute < 1) {
        throw std::domain_error("months before January 2002 are outside the absolute month axis");
    }
    return MonthIndex{absolute};
}

double scale(double value_mwh, const ScalerConfig& cfg) {
    if (!(cfg.factor > 0.0) || !std::isfinite(cfg.factor)) {
        throw std::domain_error("scaler factor must be positive and finite");
    }
    if (value_mwh < 0.0) {
        throw std::domain_error("cannot scale negative energy value: " + std::to_string(value_mwh));
    }
    double scaled = value_mwh / cfg.factor;
    if (scaled > 1.0) {
        std::cerr << "warning: scaled value " << scaled << " outside [0,1] (input " << value_mwh
                  << " MWh, factor " << cfg.factor << ")\n";
    }
    return scaled;
}

double unscale(double scaled, const ScalerConfig& cfg) {
    if (!(cfg.factor > 0.0) || !std::isfinite(cfg.factor)) {
        throw std::domain_error("scaler factor must be positive and finite");
    }
    return scaled * cfg.factor;
}

MembershipTable default_membership_table() {
    MembershipTable table{};
    for (int c = 1; c <= 12; ++c) {
        int away = std::abs(c - 1);
        int dist = std::min(away, 12 - away);  // circular distance to January
        table[c - 1] = static_cast<double>(6 - dist) / 6.0;
    }
    return table;
}

SeasonEncoding season_membership(MonthIndex m) {
    return season_membership_custom(m, default_membership_table());
}

SeasonEncoding season_membership_custom(MonthIndex m, const MembershipTable& winter_table) {
    if (m.absolute < 1) {
        throw std::domain_error("invalid month index: " + std::to_string(m.absolute));
    }
    for (double degree : winter_table) {
        if (!(degree >= 0.0 && degree <= 1.0)) {
            throw std::domain_error("membership degrees must lie in [0,1]");
        }
    }
    double winter = winter_table[m.calendar_month() - 1];
    return SeasonEncoding{winter, 1.0 - winter};
}

}  // namespace seasoncast
