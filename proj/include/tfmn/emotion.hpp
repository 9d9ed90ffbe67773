#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tfmn {

enum class Emotion : std::uint8_t {
    anger,
    disgust,
    fear,
    trust,
    joy,
    sadness,
    surprise,
    anticipation,
};

inline constexpr std::size_t kEmotionCount = 8;

inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::anger, Emotion::disgust,  Emotion::fear,     Emotion::trust,
    Emotion::joy,   Emotion::sadness,  Emotion::surprise, Emotion::anticipation,
};

inline constexpr std::string_view to_string(Emotion e)
{
    constexpr std::array<std::string_view, kEmotionCount> names = {
        "anger", "disgust", "fear", "trust", "joy", "sadness", "surprise", "anticipation",
    };
    return names[static_cast<std::size_t>(e)];
}

inline std::optional<Emotion> parse_emotion(std::string_view name)
{
    for (auto e : kAllEmotions)
        if (to_string(e) == name) return e;
    return std::nullopt;
}

/// Subset of the eight basic emotions.
class EmotionSet {
public:
    constexpr EmotionSet() = default;
    constexpr EmotionSet(std::initializer_list<Emotion> es)
    {
        for (auto e : es) insert(e);
    }

    constexpr void insert(Emotion e) { bits_ |= bit(e); }
    constexpr bool contains(Emotion e) const { return (bits_ & bit(e)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint8_t bits() const { return bits_; }

    constexpr EmotionSet& operator|=(EmotionSet other)
    {
        bits_ |= other.bits_;
        return *this;
    }
    friend constexpr bool operator==(EmotionSet, EmotionSet) = default;

    std::vector<Emotion> members() const
    {
        std::vector<Emotion> out;
        for (auto e : kAllEmotions)
            if (contains(e)) out.push_back(e);
        return out;
    }

private:
    static constexpr std::uint8_t bit(Emotion e)
    {
        return static_cast<std::uint8_t>(1u << static_cast<unsigned>(e));
    }
    std::uint8_t bits_ = 0;
};

}  // namespace tfmn
