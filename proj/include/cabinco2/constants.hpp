#ifndef CABINCO2_CONSTANTS_HPP
#define CABINCO2_CONSTANTS_HPP

#include <array>
#include <sstream>
#include <string>

#include "cabinco2/config.hpp"
#include "cabinco2/format.hpp"
#include "cabinco2/types.hpp"
#include "cabinco2/units.hpp"

namespace cabinco2 {

struct ModelConstants {
    Kilograms pax_body_weight{65.0};
    Kilograms luggage_weight{10.0};
    PerClass<Kilograms> seat_weights{{Kilograms{10.0}, Kilograms{20.0}, Kilograms{140.0}}};
    std::array<double, 2> block_hours{2.0, 7.0};         // by Haul
    std::array<double, 2> stage_length_nm{631.0, 3002.67};  // by Haul
    double kerosene_co2 = 3.15;  // kg CO2 per kg fuel; not used in computation

    // Passenger plus luggage.
    [[nodiscard]] Kilograms pax_weight() const { return pax_body_weight + luggage_weight; }
    [[nodiscard]] double block_hours_for(Haul h) const { return block_hours[static_cast<std::size_t>(h)]; }
    [[nodiscard]] double stage_length_for(Haul h) const { return stage_length_nm[static_cast<std::size_t>(h)]; }

    friend bool operator==(const ModelConstants& a, const ModelConstants& b) {
        return a.pax_body_weight == b.pax_body_weight && a.luggage_weight == b.luggage_weight &&
               a.seat_weights.values == b.seat_weights.values && a.block_hours == b.block_hours &&
               a.stage_length_nm == b.stage_length_nm && a.kerosene_co2 == b.kerosene_co2;
    }
};

// Overrides fields present in `doc`; unknown keys are rejected so typos do not
// silently fall back to defaults.
inline void apply_constants(ModelConstants& k, const config::Document& doc) {
    auto positive = [&](const std::string& key, double v) {
        if (!(v > 0.0)) {
            const auto* e = doc.find(key);
            throw UnitError(doc.source, e ? e->line : 0, 0, "'" + key + "' must be > 0");
        }
        return v;
    };
    for (const auto& [key, value] : doc.entries) {
        const auto v = doc.number(key);
        if (key == "pax_body_weight") {
            k.pax_body_weight = Kilograms(positive(key, *v));
        } else if (key == "luggage_weight") {
            k.luggage_weight = Kilograms(positive(key, *v));
        } else if (key == "kerosene_co2") {
            k.kerosene_co2 = positive(key, *v);
        } else if (key.rfind("seat_weights.", 0) == 0) {
            auto cls = parse_cabin_class(key.substr(13));
            if (!cls || !is_passenger_class(*cls)) throw ParseError(doc.source, value.line, 0, "unknown seat class in '" + key + "'");
            k.seat_weights[*cls] = Kilograms(positive(key, *v));
        } else if (key.rfind("block_hours.", 0) == 0 || key.rfind("stage_length.", 0) == 0) {
            const bool block = key[0] == 'b';
            auto haul = parse_haul(key.substr(block ? 12 : 13));
            if (!haul) throw ParseError(doc.source, value.line, 0, "unknown haul in '" + key + "'");
            auto& arr = block ? k.block_hours : k.stage_length_nm;
            arr[static_cast<std::size_t>(*haul)] = positive(key, *v);
        } else {
            throw ParseError(doc.source, value.line, 0, "unknown constant '" + key + "'");
        }
    }
}

inline ModelConstants load_constants(const std::string& path) {
    ModelConstants k;
    apply_constants(k, config::read(path));
    return k;
}

inline std::string constants_to_toml(const ModelConstants& k) {
    std::ostringstream os;
    os << "pax_body_weight = " << format_exact(k.pax_body_weight.value()) << '\n'
       << "luggage_weight = " << format_exact(k.luggage_weight.value()) << '\n'
       << "kerosene_co2 = " << format_exact(k.kerosene_co2) << "\n\n[seat_weights]\n";
    for (auto c : kPassengerClasses) os << to_string(c) << " = " << format_exact(k.seat_weights[c].value()) << '\n';
    os << "\n[block_hours]\n";
    for (auto h : kHauls) os << to_string(h) << " = " << format_exact(k.block_hours_for(h)) << '\n';
    os << "\n[stage_length]\n";
    for (auto h : kHauls) os << to_string(h) << " = " << format_exact(k.stage_length_for(h)) << '\n';
    return os.str();
}

}  // namespace cabinco2

#endif  // CABINCO2_CONSTANTS_HPP
