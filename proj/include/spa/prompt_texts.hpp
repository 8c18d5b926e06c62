#pragma once

// Compiled-in template fixtures. Generated from data/prompts/*.txt; the
// golden tests assert byte equality between these and the files.
namespace spa::detail {

extern const char *const kKeyConceptsInstruct;
extern const char *const kKeyConceptsBase;
extern const char *const kMindMapInstruct;
extern const char *const kMindMapBase;
extern const char *const kImplicationsInstruct;
extern const char *const kImplicationsBase;
extern const char *const kQACriticalInstruct;
extern const char *const kQACriticalBase;
extern const char *const kCaseStudiesInstruct;
extern const char *const kCaseStudiesBase;
extern const char *const kDiscussionsInstruct;
extern const char *const kDiscussionsBase;
extern const char *const kTeacherStyleInstruct;
extern const char *const kTeacherStyleBase;

} // namespace spa::detail
