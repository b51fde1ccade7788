#include "wcg/potential.hpp"

namespace wcg {

std::string potential_condition_name(PotentialCondition c) {
    switch (c) {
        case PotentialCondition::DeviationLower: return "deviation lower";
        case PotentialCondition::DeviationUpper: return "deviation upper";
        case PotentialCondition::LoadLower: return "load lower";
        case PotentialCondition::LoadUpper: return "load upper";
    }
    return "unknown";
}

}  // namespace wcg
