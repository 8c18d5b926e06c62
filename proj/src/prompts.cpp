#include "spa/prompts.hpp"

#include "spa/errors.hpp"
#include "spa/prompt_texts.hpp"
#include "spa/text.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace spa {

namespace fs = std::filesystem;

Level level_of(Strategy s) {
    switch (s) {
    case Strategy::KeyConcepts:
    case Strategy::MindMap: return Level::ConceptLearning;
    case Strategy::Implications:
    case Strategy::QACritical: return Level::CriticalThinking;
    case Strategy::CaseStudies:
    case Strategy::Discussions:
    case Strategy::TeacherStyle: return Level::GenerativeLearning;
    }
    fail(ErrorKind::internal, "unreachable strategy");
}

std::string_view short_name(Strategy s) {
    switch (s) {
    case Strategy::KeyConcepts: return "Key";
    case Strategy::MindMap: return "Mind";
    case Strategy::Implications: return "Imp";
    case Strategy::QACritical: return "QA-ct";
    case Strategy::CaseStudies: return "Case";
    case Strategy::Discussions: return "Disc";
    case Strategy::TeacherStyle: return "Teach";
    }
    fail(ErrorKind::internal, "unreachable strategy");
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
    std::string lower = lowercase(name);
    for (Strategy s : kCanonicalStrategies)
        if (lower == lowercase(short_name(s))) return s;
    return std::nullopt;
}

std::string_view variant_name(Variant v) {
    return v == Variant::Instruct ? "instruct" : "base";
}

std::optional<Variant> variant_from_name(std::string_view name) {
    std::string lower = lowercase(name);
    if (lower == "instruct") return Variant::Instruct;
    if (lower == "base") return Variant::Base;
    return std::nullopt;
}

std::string PromptTemplate::serialize() const {
    if (variant == Variant::Instruct)
        return "System:\n" + system_text + "\n\nUser:\n" + user_text + "\n";
    return user_text + "\n" + output_header + "\n";
}

const PromptTemplate *PromptSet::find(Strategy s) const {
    for (const auto &tpl : templates)
        if (tpl.strategy == s) return &tpl;
    return nullptr;
}

PromptTemplate parse_template(Strategy strategy, Variant variant, std::string_view bytes) {
    PromptTemplate tpl;
    tpl.strategy = strategy;
    tpl.variant = variant;

    std::string body(bytes);
    if (!body.empty() && body.back() == '\n') body.pop_back();

    if (variant == Variant::Instruct) {
        constexpr std::string_view head = "System:\n";
        constexpr std::string_view sep = "\n\nUser:\n";
        if (!starts_with(body, head))
            fail(ErrorKind::config, "instruct template must start with 'System:' line");
        size_t split = body.find(sep);
        if (split == std::string::npos)
            fail(ErrorKind::config, "instruct template missing 'User:' section");
        tpl.system_text = body.substr(head.size(), split - head.size());
        tpl.user_text = body.substr(split + sep.size());
    } else {
        size_t last_nl = body.rfind('\n');
        if (last_nl == std::string::npos)
            fail(ErrorKind::config, "base template needs a trailing output header line");
        tpl.output_header = body.substr(last_nl + 1);
        tpl.user_text = body.substr(0, last_nl);
        if (trim(tpl.output_header).empty())
            fail(ErrorKind::config, "base template output header is empty");
    }
    if (tpl.user_text.find("{context}") == std::string::npos)
        fail(ErrorKind::config, std::string("template '") + std::string(short_name(strategy)) +
                                    "' lacks the {context} placeholder");
    return tpl;
}

PromptSet builtin_prompt_set(Variant variant) {
    struct Entry {
        Strategy strategy;
        const char *instruct;
        const char *base;
    };
    static const Entry entries[] = {
        {Strategy::KeyConcepts, detail::kKeyConceptsInstruct, detail::kKeyConceptsBase},
        {Strategy::MindMap, detail::kMindMapInstruct, detail::kMindMapBase},
        {Strategy::Implications, detail::kImplicationsInstruct, detail::kImplicationsBase},
        {Strategy::QACritical, detail::kQACriticalInstruct, detail::kQACriticalBase},
        {Strategy::CaseStudies, detail::kCaseStudiesInstruct, detail::kCaseStudiesBase},
        {Strategy::Discussions, detail::kDiscussionsInstruct, detail::kDiscussionsBase},
        {Strategy::TeacherStyle, detail::kTeacherStyleInstruct, detail::kTeacherStyleBase},
    };
    PromptSet set;
    set.variant = variant;
    for (const auto &entry : entries)
        set.templates.push_back(parse_template(
            entry.strategy, variant,
            variant == Variant::Instruct ? entry.instruct : entry.base));
    return set;
}

namespace {

PromptTemplate parse_template_file(const fs::path &file, Strategy strategy, Variant variant) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(ErrorKind::config, "cannot open template file: " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();

    // Optional front-matter header.
    if (starts_with(bytes, "---\n")) {
        size_t end = bytes.find("\n---\n", 4);
        if (end == std::string::npos)
            fail(ErrorKind::config, file.string() + ": unterminated front-matter");
        std::string header = bytes.substr(4, end - 4);
        std::string body = bytes.substr(end + 5);
        std::optional<Strategy> fm_strategy;
        std::optional<Variant> fm_variant;
        for (const auto &line : split_lines(header)) {
            if (trim(line).empty()) continue;
            size_t colon = line.find(':');
            if (colon == std::string::npos)
                fail(ErrorKind::config, file.string() + ": bad front-matter line '" + line + "'");
            std::string key = trim(line.substr(0, colon));
            std::string value = trim(line.substr(colon + 1));
            if (key == "strategy") {
                fm_strategy = strategy_from_name(value);
                if (!fm_strategy)
                    fail(ErrorKind::config, file.string() + ": unknown strategy '" + value + "'");
            } else if (key == "variant") {
                fm_variant = variant_from_name(value);
                if (!fm_variant)
                    fail(ErrorKind::config, file.string() + ": unknown variant '" + value + "'");
            } else {
                fail(ErrorKind::config, file.string() + ": unknown front-matter key '" + key + "'");
            }
        }
        return parse_template(fm_strategy.value_or(strategy),
                              fm_variant.value_or(variant), body);
    }
    return parse_template(strategy, variant, bytes);
}

} // namespace

PromptSet load_prompt_dir(const std::string &dir, Variant variant) {
    if (!fs::is_directory(dir))
        fail(ErrorKind::config, "prompt directory not found: " + dir);
    PromptSet builtins = builtin_prompt_set(variant);
    PromptSet set;
    set.variant = variant;
    for (Strategy s : kCanonicalStrategies) {
        fs::path file = fs::path(dir) / (lowercase(short_name(s)) + "." +
                                         std::string(variant_name(variant)) + ".txt");
        if (fs::exists(file)) {
            set.templates.push_back(parse_template_file(file, s, variant));
        } else {
            set.templates.push_back(*builtins.find(s));
        }
    }
    return set;
}

namespace {

bool is_placeholder_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

// Single pass: substituted values are never rescanned for placeholders.
std::string substitute(std::string_view text, const Document &doc) {
    std::string out;
    out.reserve(text.size() + doc.text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '{') {
            out += text[i++];
            continue;
        }
        size_t close = i + 1;
        while (close < text.size() && is_placeholder_char(text[close])) ++close;
        if (close >= text.size() || text[close] != '}') {
            out += text[i++]; // bare '{', not a placeholder
            continue;
        }
        std::string_view token = text.substr(i + 1, close - i - 1);
        if (token == "title") {
            out += doc.title_or_id();
        } else if (token == "context") {
            out += doc.text;
        } else {
            fail(ErrorKind::config, "unresolved template placeholder '{" +
                                        std::string(token) + "}'");
        }
        i = close + 1;
    }
    return out;
}

} // namespace

RenderedPrompt render(const PromptTemplate &tpl, const Document &doc) {
    if (doc.text.empty())
        fail(ErrorKind::precondition, "render: document text is empty (id " + doc.id + ")");
    RenderedPrompt out;
    if (tpl.variant == Variant::Instruct) {
        out.has_system = true;
        out.system = substitute(tpl.system_text, doc);
        out.user = substitute(tpl.user_text, doc);
    } else {
        out.has_system = false;
        out.user = substitute(tpl.user_text + "\n" + tpl.output_header, doc);
    }
    return out;
}

PromptSet subset(const PromptSet &set, const std::vector<Strategy> &removals) {
    for (Strategy r : removals)
        if (!set.find(r))
            fail(ErrorKind::precondition,
                 "cannot remove strategy '" + std::string(short_name(r)) +
                     "': not in the prompt set");
    PromptSet out;
    out.variant = set.variant;
    for (const auto &tpl : set.templates) {
        bool removed = false;
        for (Strategy r : removals)
            if (tpl.strategy == r) removed = true;
        if (!removed) out.templates.push_back(tpl);
    }
    if (out.templates.empty())
        fail(ErrorKind::precondition, "prompt subset would be empty");
    return out;
}

} // namespace spa
