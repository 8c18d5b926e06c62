#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spa/corpus.hpp"
#include "spa/diversity.hpp"
#include "spa/eval.hpp"
#include "spa/exporter.hpp"
#include "spa/planner.hpp"
#include "spa/pos_tagger.hpp"
#include "spa/prompts.hpp"
#include "spa/tokenizer.hpp"

namespace py = pybind11;
using namespace spa;

PYBIND11_MODULE(pyspa, m) {
    m.doc() = "Prompt-set corpus augmentation: ingest, planning, diversity metrics, "
              "answer extraction";

    py::enum_<Strategy>(m, "Strategy")
        .value("KeyConcepts", Strategy::KeyConcepts)
        .value("MindMap", Strategy::MindMap)
        .value("Implications", Strategy::Implications)
        .value("QACritical", Strategy::QACritical)
        .value("CaseStudies", Strategy::CaseStudies)
        .value("Discussions", Strategy::Discussions)
        .value("TeacherStyle", Strategy::TeacherStyle);

    py::enum_<Variant>(m, "Variant")
        .value("Instruct", Variant::Instruct)
        .value("Base", Variant::Base);

    py::class_<Document>(m, "Document")
        .def(py::init<>())
        .def_readwrite("id", &Document::id)
        .def_readwrite("title", &Document::title)
        .def_readwrite("text", &Document::text)
        .def_readonly("word_count", &Document::word_count)
        .def_readonly("source", &Document::source);

    py::class_<Corpus>(m, "Corpus")
        .def_readonly("name", &Corpus::name)
        .def_readonly("documents", &Corpus::documents)
        .def("fingerprint", &Corpus::fingerprint)
        .def("__len__", [](const Corpus &c) { return c.size(); });

    m.def("load_squad_json", &load_squad_json, py::arg("path"));
    m.def("load_jsonl", &load_jsonl, py::arg("path"));
    m.def("load_text_dir", &load_text_dir, py::arg("path"));
    m.def("sample_documents", &sample_documents, py::arg("corpus"), py::arg("k"),
          py::arg("seed"));

    py::class_<PromptTemplate>(m, "PromptTemplate")
        .def_readonly("strategy", &PromptTemplate::strategy)
        .def_readonly("variant", &PromptTemplate::variant)
        .def_readonly("system_text", &PromptTemplate::system_text)
        .def_readonly("user_text", &PromptTemplate::user_text)
        .def_readonly("output_header", &PromptTemplate::output_header)
        .def("serialize", &PromptTemplate::serialize);

    py::class_<RenderedPrompt>(m, "RenderedPrompt")
        .def_readonly("system", &RenderedPrompt::system)
        .def_readonly("user", &RenderedPrompt::user)
        .def_readonly("has_system", &RenderedPrompt::has_system);

    py::class_<PromptSet>(m, "PromptSet")
        .def_readonly("variant", &PromptSet::variant)
        .def_readonly("templates", &PromptSet::templates)
        .def("__len__", [](const PromptSet &s) { return s.strategy_count(); });

    m.def("builtin_prompt_set", &builtin_prompt_set, py::arg("variant"));
    m.def("render", &render, py::arg("template"), py::arg("doc"));
    m.def("subset", &subset, py::arg("prompt_set"), py::arg("removals"));
    m.def("short_name", [](Strategy s) { return std::string(short_name(s)); });

    py::class_<Assignment>(m, "Assignment")
        .def_readonly("doc_id", &Assignment::doc_id)
        .def_readonly("strategy", &Assignment::strategy)
        .def_readonly("sample_index", &Assignment::sample_index);

    py::class_<GenerationPlan>(m, "GenerationPlan")
        .def_readonly("est_tokens_per_sample", &GenerationPlan::est_tokens_per_sample)
        .def_readonly("assignments", &GenerationPlan::assignments)
        .def_readonly("quotas", &GenerationPlan::quotas)
        .def_readonly("corpus_fingerprint", &GenerationPlan::corpus_fingerprint)
        .def("fingerprint", &GenerationPlan::fingerprint);

    m.def("plan_by_tokens", &plan_by_tokens, py::arg("corpus"), py::arg("prompts"),
          py::arg("target_tokens"), py::arg("est_tokens_per_sample"));
    m.def("plan_by_samples", &plan_by_samples, py::arg("corpus"), py::arg("prompts"),
          py::arg("samples_per_passage"),
          py::arg("est_tokens_per_sample") = kDefaultEstTokensPerSample);
    m.def("estimate_total_tokens", &estimate_total_tokens, py::arg("plan"));

    m.def("compression_ratio", &compression_ratio, py::arg("texts"));
    m.def("self_repetition", &self_repetition, py::arg("texts"), py::arg("ngram_n") = 4);
    m.def("self_bleu", &self_bleu, py::arg("texts"));
    m.def(
        "pos_compress_ratio",
        [](const std::vector<std::string> &texts) {
            return pos_compress_ratio(texts, bundled_tagger());
        },
        py::arg("texts"));
    m.def(
        "tag_text", [](const std::string &text) { return bundled_tagger().tag_text(text); },
        py::arg("text"));

    m.def("extract_first_paragraph",
          [](const std::string &s) { return extract_first_paragraph(s); });
    m.def("extract_first_sentence",
          [](const std::string &s) { return extract_first_sentence(s); });
    m.def("format_multihop_prompt", &format_multihop_prompt, py::arg("question"));

    m.def(
        "count_tokens",
        [](const std::string &text) { return TokenCounter::approximate().count(text); },
        py::arg("text"));
}
