#include "cshrink/types.hpp"

#include <stdexcept>
#include <utility>

namespace cshrink {

std::string_view to_string(Component c) {
    switch (c) {
        case Component::SO: return "SO";
        case Component::HR: return "HR";
        case Component::HIP: return "HIP";
        case Component::BB: return "BB";
    }
    return "?";
}

std::string_view to_string(Population p) {
    return p == Population::Batters ? "batters" : "pitchers";
}

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::BA: return "BA";
        case Measure::OBP: return "OBP";
        case Measure::FIP: return "FIP";
    }
    return "?";
}

std::optional<Component> parse_component(std::string_view s) {
    for (auto c : kAllComponents)
        if (to_string(c) == s) return c;
    return std::nullopt;
}

std::optional<Population> parse_population(std::string_view s) {
    if (s == "batters") return Population::Batters;
    if (s == "pitchers") return Population::Pitchers;
    return std::nullopt;
}

std::optional<Measure> parse_measure(std::string_view s) {
    for (auto m : {Measure::BA, Measure::OBP, Measure::FIP})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

const std::vector<ComponentObservation>& ComponentSet::operator[](Component c) const {
    switch (c) {
        case Component::SO: return so;
        case Component::HR: return hr;
        case Component::HIP: return hip;
        case Component::BB: return bb;
    }
    throw std::logic_error("bad component");
}

std::vector<ComponentObservation>& ComponentSet::operator[](Component c) {
    return const_cast<std::vector<ComponentObservation>&>(std::as_const(*this)[c]);
}

}  // namespace cshrink
