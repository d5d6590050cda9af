#pragma once

#include <cmath>
#include <compare>

namespace episodic {

struct GeoPoint {
    double lat = 0.0;  // degrees, [-90, 90]
    double lon = 0.0;  // degrees, [-180, 180]

    auto operator<=>(const GeoPoint&) const = default;
};

inline bool geo_in_range(const GeoPoint& p) {
    return p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 &&
           p.lon <= 180.0;
}

// Great-circle distance in meters (haversine, mean earth radius).
inline double haversine_m(const GeoPoint& a, const GeoPoint& b) {
    constexpr double kEarthRadiusM = 6371008.8;
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
    double lat1 = a.lat * kDegToRad, lat2 = b.lat * kDegToRad;
    double dlat = (b.lat - a.lat) * kDegToRad;
    double dlon = (b.lon - a.lon) * kDegToRad;
    double s1 = std::sin(dlat / 2), s2 = std::sin(dlon / 2);
    double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, h)));
}

}  // namespace episodic
