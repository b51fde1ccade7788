#include "wcg/game.hpp"

namespace wcg {

Game::Game(std::vector<Player> players, std::vector<Resource> resources,
           std::vector<std::vector<std::vector<int>>> strategies)
    : players_(std::move(players)), resources_(std::move(resources)), strategies_(std::move(strategies)) {
    if (players_.empty()) throw InputError("game needs at least one player");
    if (resources_.empty()) throw InputError("game needs at least one resource");
    if (strategies_.size() != players_.size())
        throw InputError("strategy lists must match the player list");

    std::set<std::string> seen;
    for (const auto& p : players_) {
        if (!(p.weight > 0)) throw InputError("player '" + p.id + "' needs weight > 0");
        if (!seen.insert(p.id).second) throw InputError("duplicate player id '" + p.id + "'");
    }
    seen.clear();
    for (const auto& r : resources_)
        if (!seen.insert(r.id).second) throw InputError("duplicate resource id '" + r.id + "'");

    for (std::size_t i = 0; i < strategies_.size(); ++i) {
        auto& list = strategies_[i];
        if (list.empty())
            throw InputError("player '" + players_[i].id + "' needs at least one strategy");
        for (auto& strat : list) {
            std::sort(strat.begin(), strat.end());
            if (std::adjacent_find(strat.begin(), strat.end()) != strat.end())
                throw InputError("strategy of player '" + players_[i].id +
                                 "' lists a resource twice");
            for (int e : strat)
                if (e < 0 || e >= n_resources())
                    throw InputError("strategy of player '" + players_[i].id +
                                     "' references an unknown resource");
        }
    }

    total_weight_ = 0;
    min_weight_ = players_.front().weight;
    max_weight_ = players_.front().weight;
    for (const auto& p : players_) {
        total_weight_ += p.weight;
        min_weight_ = std::min(min_weight_, p.weight);
        max_weight_ = std::max(max_weight_, p.weight);
    }
}

int Game::resource_index(const std::string& id) const {
    for (int e = 0; e < n_resources(); ++e)
        if (resources_[e].id == id) return e;
    throw InputError("unknown resource id '" + id + "'");
}

int Game::player_index(const std::string& id) const {
    for (int i = 0; i < n_players(); ++i)
        if (players_[i].id == id) return i;
    throw InputError("unknown player id '" + id + "'");
}

unsigned long long Game::profile_count() const {
    unsigned long long count = 1;
    for (int i = 0; i < n_players(); ++i) {
        unsigned long long k = strategies_[i].size();
        if (count > std::numeric_limits<unsigned long long>::max() / k)
            return std::numeric_limits<unsigned long long>::max();
        count *= k;
    }
    return count;
}

void validate_profile(const Game& g, const Profile& p) {
    if (static_cast<int>(p.size()) != g.n_players())
        throw InputError("profile length must equal the number of players");
    for (int i = 0; i < g.n_players(); ++i)
        if (p[i] < 0 || p[i] >= g.strategy_count(i))
            throw InputError("profile strategy index out of range for player '" +
                             g.players()[i].id + "'");
}

}  // namespace wcg
