#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spa {

struct Document {
    std::string id;     // unique within a corpus
    std::string title;  // may be empty; templates fall back to the id
    std::string text;   // normalized passage body, never empty
    size_t word_count = 0;
    std::string source; // "<file>#<index>" origin label

    // Title to substitute for {title}: the id when the document is untitled.
    const std::string &title_or_id() const { return title.empty() ? id : title; }
};

struct Corpus {
    std::string name;
    std::vector<Document> documents;

    size_t size() const { return documents.size(); }
    const Document *find(const std::string &id) const;

    // Content hash over (id, title, text) of every document, in order.
    std::string fingerprint() const;
};

// SQuAD v1.1 JSON: data[] -> {title, paragraphs[] -> {context}}. One document
// per paragraph, id "<article title>#<paragraph index>".
Corpus load_squad_json(const std::string &path);

// JSONL with one object per line: {text, title?, id?}. Missing id ->
// "<path>#<line number>" (1-based).
Corpus load_jsonl(const std::string &path);

// Directory of UTF-8 .txt files, one document per file, sorted by filename;
// title = filename stem.
Corpus load_text_dir(const std::string &path);

// Dispatch on format name: "squad" | "jsonl" | "txt-dir".
Corpus load_corpus(const std::string &format, const std::string &path);

// Deterministic sample without replacement (see Rng docs for the exact
// algorithm). Same (corpus order, k, seed) -> same documents, same order.
std::vector<Document> sample_documents(const Corpus &corpus, size_t k, uint64_t seed);

} // namespace spa
