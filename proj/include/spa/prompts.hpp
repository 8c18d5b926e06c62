#pragma once

#include "spa/corpus.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spa {

// The seven rewriting strategies, in canonical order (the order used for
// round-robin assignment and everywhere a stable ordering is needed).
enum class Strategy {
    KeyConcepts,
    MindMap,
    Implications,
    QACritical,
    CaseStudies,
    Discussions,
    TeacherStyle,
};

enum class Level { ConceptLearning, CriticalThinking, GenerativeLearning };

enum class Variant { Instruct, Base };

inline constexpr std::array<Strategy, 7> kCanonicalStrategies = {
    Strategy::KeyConcepts, Strategy::MindMap,     Strategy::Implications,
    Strategy::QACritical,  Strategy::CaseStudies, Strategy::Discussions,
    Strategy::TeacherStyle,
};

Level level_of(Strategy s);

// Short names used in config files and serialized records:
// Key, Mind, Imp, QA-ct, Case, Disc, Teach.
std::string_view short_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

std::string_view variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

struct PromptTemplate {
    Strategy strategy = Strategy::KeyConcepts;
    Variant variant = Variant::Instruct;
    std::string system_text;   // Instruct only
    std::string user_text;     // contains {context}, usually {title}
    std::string output_header; // Base only: trailing completion cue line

    // Canonical fixture-file bytes for this template. Instruct templates
    // serialize as "System:\n<system>\n\nUser:\n<user>\n"; Base templates as
    // "<user>\n<output_header>\n".
    std::string serialize() const;
};

struct RenderedPrompt {
    std::string system; // meaningful only when has_system
    std::string user;
    bool has_system = false;
};

struct PromptSet {
    Variant variant = Variant::Instruct;
    std::vector<PromptTemplate> templates;

    size_t strategy_count() const { return templates.size(); }
    const PromptTemplate *find(Strategy s) const;
};

// All 7 templates for the given variant, byte-identical to the fixture files
// under data/prompts/.
PromptSet builtin_prompt_set(Variant variant);

// Parses one template from fixture-file bytes (see PromptTemplate::serialize).
PromptTemplate parse_template(Strategy strategy, Variant variant, std::string_view bytes);

// Loads custom templates from a directory. Files are named
// "<short-name>.<variant>.txt" (short names lowercased, e.g. qa-ct.base.txt)
// and hold the same layout as the built-in fixtures. A file may instead start
// with a front-matter header:
//   ---
//   strategy: QA-ct
//   variant: base
//   ---
//   <template body>
// Strategies absent from the directory fall back to the built-in template.
PromptSet load_prompt_dir(const std::string &dir, Variant variant);

// Substitutes {title} and {context} in a single pass over the template text.
// An unknown {placeholder} token in the template is a template error; braces
// inside document text pass through untouched.
RenderedPrompt render(const PromptTemplate &tpl, const Document &doc);

// Removes the listed strategies. Removing a strategy that is not present, or
// removing everything, is an error.
PromptSet subset(const PromptSet &set, const std::vector<Strategy> &removals);

} // namespace spa
