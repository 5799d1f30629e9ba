#ifndef NORMNUM_JSON_IO_HPP
#define NORMNUM_JSON_IO_HPP

// JSON wire formats.
//
// Arbitrary-precision integers are emitted as decimal strings, never as JSON
// numbers: endpoint denominators routinely exceed 2^64 and must round-trip
// bit-exactly. An IntervalUnion serializes as an array of
// [num_lo, den_lo, num_hi, den_hi] quadruples in lowest terms, sorted.

#include "normnum/interval.hpp"
#include "normnum/rational.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace normnum {

using nlohmann::json;

inline json rat_to_json(const Rat& q) {
    return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

inline Rat rat_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("rational: expected [num, den] pair");
    return rat(Int(j[0].get<std::string>()), Int(j[1].get<std::string>()));
}

inline json union_to_json(const IntervalUnion& u) {
    json arr = json::array();
    for (const auto& iv : u.parts()) {
        arr.push_back(json::array({iv.lo.get_num().get_str(), iv.lo.get_den().get_str(),
                                   iv.hi.get_num().get_str(), iv.hi.get_den().get_str()}));
    }
    return arr;
}

inline IntervalUnion union_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("interval union: expected array");
    std::vector<Interval> raw;
    raw.reserve(j.size());
    for (const auto& quad : j) {
        if (!quad.is_array() || quad.size() != 4)
            throw std::invalid_argument("interval union: expected [n,d,n,d] quadruple");
        raw.emplace_back(rat(Int(quad[0].get<std::string>()), Int(quad[1].get<std::string>())),
                         rat(Int(quad[2].get<std::string>()), Int(quad[3].get<std::string>())));
    }
    return IntervalUnion::normalize(std::move(raw));
}

}  // namespace normnum

#endif
