#include "spa/corpus.hpp"

#include "spa/errors.hpp"
#include "spa/hash.hpp"
#include "spa/rng.hpp"
#include "spa/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace spa {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::precondition, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string normalize(std::string_view raw) { return trim(normalize_newlines(raw)); }

void check_unique_ids(const Corpus &corpus) {
    std::unordered_set<std::string> seen;
    for (const auto &doc : corpus.documents)
        if (!seen.insert(doc.id).second)
            fail(ErrorKind::precondition,
                 "duplicate document id '" + doc.id + "' in corpus " + corpus.name);
}

Document make_document(std::string id, std::string title, std::string text,
                       std::string source) {
    Document doc;
    doc.id = std::move(id);
    doc.title = std::move(title);
    doc.text = std::move(text);
    doc.word_count = count_words(doc.text);
    doc.source = std::move(source);
    return doc;
}

} // namespace

const Document *Corpus::find(const std::string &id) const {
    for (const auto &doc : documents)
        if (doc.id == id) return &doc;
    return nullptr;
}

std::string Corpus::fingerprint() const {
    Fnv1a64 h;
    for (const auto &doc : documents) h.field(doc.id).field(doc.title).field(doc.text);
    return to_hex(h.value());
}

Corpus load_squad_json(const std::string &path) {
    std::string raw = read_file(path);
    json root;
    try {
        root = json::parse(raw);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::precondition,
             path + ": JSON parse failure at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!root.is_object() || !root.contains("data") || !root["data"].is_array())
        fail(ErrorKind::precondition, path + ": not SQuAD-shaped (missing top-level 'data' array)");

    Corpus corpus;
    corpus.name = fs::path(path).filename().string();
    size_t file_index = 0;
    for (const auto &article : root["data"]) {
        if (!article.is_object() || !article.contains("paragraphs"))
            fail(ErrorKind::precondition, path + ": article without 'paragraphs'");
        std::string title = normalize(article.value("title", std::string{}));
        size_t para_index = 0;
        for (const auto &para : article["paragraphs"]) {
            if (!para.is_object() || !para.contains("context") || !para["context"].is_string())
                fail(ErrorKind::precondition, path + ": paragraph without string 'context'");
            std::string text = normalize(para["context"].get<std::string>());
            if (text.empty())
                fail(ErrorKind::precondition,
                     path + ": empty context in article '" + title + "'");
            std::string id = title + "#" + std::to_string(para_index);
            corpus.documents.push_back(make_document(
                id, title, std::move(text), path + "#" + std::to_string(file_index)));
            ++para_index;
            ++file_index;
        }
    }
    if (corpus.documents.empty())
        fail(ErrorKind::precondition, path + ": no paragraphs found (empty corpus)");
    check_unique_ids(corpus);
    return corpus;
}

Corpus load_jsonl(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::precondition, "cannot open file: " + path);

    Corpus corpus;
    corpus.name = fs::path(path).filename().string();
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error &e) {
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": " + e.what());
        }
        if (!obj.is_object() || !obj.contains("text") || !obj["text"].is_string())
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": missing string 'text' field");
        std::string text = normalize(obj["text"].get<std::string>());
        if (text.empty())
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": empty text");
        std::string id = obj.contains("id") && obj["id"].is_string()
                             ? obj["id"].get<std::string>()
                             : path + "#" + std::to_string(line_number);
        std::string title = normalize(obj.value("title", std::string{}));
        corpus.documents.push_back(make_document(
            std::move(id), std::move(title), std::move(text),
            path + "#" + std::to_string(line_number)));
    }
    if (corpus.documents.empty())
        fail(ErrorKind::precondition, path + ": no documents found (empty corpus)");
    check_unique_ids(corpus);
    return corpus;
}

Corpus load_text_dir(const std::string &path) {
    if (!fs::is_directory(path))
        fail(ErrorKind::precondition, "not a directory: " + path);
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    Corpus corpus;
    corpus.name = fs::path(path).filename().string();
    size_t index = 0;
    for (const auto &file : files) {
        std::string text = normalize(read_file(file.string()));
        if (text.empty())
            fail(ErrorKind::precondition, "empty text file: " + file.string());
        std::string stem = file.stem().string();
        corpus.documents.push_back(make_document(
            stem, stem, std::move(text), file.string() + "#" + std::to_string(index)));
        ++index;
    }
    if (corpus.documents.empty())
        fail(ErrorKind::precondition, path + ": no .txt files found (empty corpus)");
    check_unique_ids(corpus);
    return corpus;
}

Corpus load_corpus(const std::string &format, const std::string &path) {
    if (format == "squad") return load_squad_json(path);
    if (format == "jsonl") return load_jsonl(path);
    if (format == "txt-dir") return load_text_dir(path);
    fail(ErrorKind::config, "unknown corpus format '" + format + "' (expected squad|jsonl|txt-dir)");
}

std::vector<Document> sample_documents(const Corpus &corpus, size_t k, uint64_t seed) {
    if (k > corpus.size())
        fail(ErrorKind::precondition,
             "sample size " + std::to_string(k) + " exceeds corpus size " +
                 std::to_string(corpus.size()));
    Rng rng(seed);
    auto picks = rng.sample(corpus.size(), k);
    std::vector<Document> out;
    out.reserve(k);
    for (size_t idx : picks) out.push_back(corpus.documents[idx]);
    return out;
}

} // namespace spa
