#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cshrink {

using Count = std::int64_t;

enum class Component { SO, HR, HIP, BB };
enum class Population { Batters, Pitchers };
enum class Measure { BA, OBP, FIP };

inline constexpr std::array<Component, 4> kAllComponents{
    Component::SO, Component::HR, Component::HIP, Component::BB};

std::string_view to_string(Component c);
std::string_view to_string(Population p);
std::string_view to_string(Measure m);

std::optional<Component> parse_component(std::string_view s);
std::optional<Population> parse_population(std::string_view s);
std::optional<Measure> parse_measure(std::string_view s);

// Successes y out of n opportunities for one player in one component.
struct ComponentObservation {
    std::string player_id;
    Count successes = 0;
    Count opportunities = 0;
};

// The four component observation lists for one population-season, aligned by
// index: element i of every list belongs to the same player.
struct ComponentSet {
    std::vector<ComponentObservation> so;
    std::vector<ComponentObservation> hr;
    std::vector<ComponentObservation> hip;
    std::vector<ComponentObservation> bb;

    const std::vector<ComponentObservation>& operator[](Component c) const;
    std::vector<ComponentObservation>& operator[](Component c);
    std::size_t size() const noexcept { return so.size(); }
};

}  // namespace cshrink
