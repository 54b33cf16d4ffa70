#pragma once

#include <string>
#include <string_view>

#include "linkspam/error.hpp"

namespace linkspam {

enum class Label { NonSpam, Spam };

inline std::string label_to_string(Label l) {
    return l == Label::Spam ? "spam" : "nonspam";
}

inline Label label_from_string(std::string_view s) {
    if (s == "spam") return Label::Spam;
    if (s == "nonspam") return Label::NonSpam;
    throw InvalidInputError("unknown label: " + std::string(s));
}

} // namespace linkspam
