#ifndef COALGAME_GAMESPEC_IO_HPP
#define COALGAME_GAMESPEC_IO_HPP

#include <memory>
#include <optional>
#include <string>

#include "coalgame/game.hpp"

namespace coalgame {

// Strict JSON game-spec documents: unknown keys rejected, all
// diagnostics located by key or entry index. Throws ParseError on
// syntax problems and ValidationError on semantic ones.
std::shared_ptr<const GameSpec> parse_gamespec(const std::string& text);

// Lossless inverse of parse_gamespec for valid documents.
std::string serialize_gamespec(const GameSpec& spec);

// Parameters of the built-in table fixtures.
struct FixtureParams {
    Rat epsilon = Rat(1, 10);          // bos: bonus for realized joint outings
    bool zero_miscoordination = false; // bos: joint miscoordination pays 0 instead of epsilon
    Rat lunch_two_pair = Rat(3);       // lunch: payoff completion for two-pair partitions
};

// The four worked games: "dinner", "lunch", "bos", "staghare".
// Throws DomainError for unknown names or epsilon < 0.
std::shared_ptr<const GameSpec> fixture(const std::string& name,
                                        const FixtureParams& params = {});

bool is_fixture_name(const std::string& name);

// The equilibrium each fixture's narrative revolves around, expressed in
// the given game when it embeds there.
std::optional<MixedProfile> fixture_reference_profile(const std::string& name,
                                                      const Game& game,
                                                      const FixtureParams& params = {});

// Candidate mixed-profile documents:
// {"profile": {"A": [{"partition": "A,B|C1|C2", "action": "-", "prob": "1/2"}]}}
MixedProfile parse_profile(const std::string& text, const Game& game);

std::string serialize_profile(const Game& game, const MixedProfile& m);

}  // namespace coalgame

#endif
