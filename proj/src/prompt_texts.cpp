#include "spa/prompt_texts.hpp"

namespace spa::detail {

const char *const kKeyConceptsInstruct = R"SPA_TPL(System:
You are an assistant tasked with identifying and explaining key concepts
from the provided text.

User:
Generate a list of key concepts based on the title and context provided
below. Focus on one concept at a time and explain it in a clear and
detailed way to make it easier to understand and remember. Each concept
explanation should include relevant entities and facts and preserve
important details from the original text.

Title: {title}
Context: {context}
)SPA_TPL";
const char *const kKeyConceptsBase = R"SPA_TPL(Generate a list of key concepts based on the title and text provided below.
Focus on one concept at a time and explain it in a clear and detailed way to
make it easier to understand and remember. Each concept explanation should
include relevant entities and facts and preserve important details from the
original text. Avoid general background knowledge or any unmentioned facts.

Text:
{title}
{context}

Key Concepts and their explanations:
)SPA_TPL";
const char *const kMindMapInstruct = R"SPA_TPL(System:
You are an assistant that creates a mind map representation from the
provided text.

User:
Create a mind map that organizes the key concepts from the provided
text and represents the relationships between the different concepts.
Explicitly mention relevant entities within the map.

Title: {title}
Context: {context}
)SPA_TPL";
const char *const kMindMapBase = R"SPA_TPL(Create a mind map that organizes the key concepts from the provided text and
represents the relationships between the different concepts. Explicitly
mention relevant entities within the map. Avoid general background knowledge
or any unmentioned facts. Keep each point concise and avoid repeating any
information.

Text:
{title}
{context}

Mind-map like outline:
)SPA_TPL";
const char *const kImplicationsInstruct = R"SPA_TPL(System:
You are an assistant tasked with analyzing the provided passage and
producing a list of implications derived directly or indirectly from
the content.

User:
Title: {title}
Context: {context}
)SPA_TPL";
const char *const kImplicationsBase = R"SPA_TPL(Read the following text and produce a list of implications derived directly
or indirectly from the content.

Text:
{title}
{context}

Implications:
)SPA_TPL";
const char *const kQACriticalInstruct = R"SPA_TPL(System:
You are an assistant tasked with analyzing the provided text and
generating in-depth question-answer pairs based on the provided text.

User:
Generate in-depth question-answer pairs based on the title and text
below.\nQuestions must start with or focus on high-order critical
thinking (analysis, synthesis, evaluation): 'Compare/Contrast',
'Explain the logic of', 'Justify', 'Evaluate the impact of', or 'What
if', etc. STRICTLY AVOID: Simple recall, definitions, or listing facts
(e.g., 'What is...', 'List the...').

Title: {title}
Context: {context}
)SPA_TPL";
const char *const kQACriticalBase = R"SPA_TPL(Analyze the provided text and generate in-depth question-answer pairs based
on the provided text.
Questions must start with or focus on high-order critical thinking (analysis,
synthesis, evaluation): 'Compare/Contrast', 'Explain the logic of', 'Justify',
'Evaluate the impact of', or 'What if', etc. STRICTLY AVOID: Simple recall,
definitions, or listing facts (e.g., 'What is...', 'List the...'). Avoid
general background knowledge or any unmentioned facts.


Text:
{title}
{context}

Critical thinking question-answer pairs:
)SPA_TPL";
const char *const kCaseStudiesInstruct = R"SPA_TPL(System:
You are an assistant tasked with analyzing the provided text and
transforming it into a structured, professional case study.

User:
Generate a formal case-based writing based on the title and context
provided below. Connect the case facts to the underlying theories or
themes in the context. Include the original title and all key details
from the context without changing their meaning.

Title: {title}
Context: {context}
)SPA_TPL";
const char *const kCaseStudiesBase = R"SPA_TPL(Analyze the provided text and generate a structured, professional and formal
case study. Include the original title and all key details from the context
without changing their meaning. Avoid general background knowledge or any
unmentioned facts.

Text:
{title}
{context}

Case-based writing from the text:
)SPA_TPL";
const char *const kDiscussionsInstruct = R"SPA_TPL(System:
You are an assistant tasked with generating a natural, in-depth
discussion between two readers of a text.

User:
Generate a natural, in-depth discussion between two readers (Person A
and Person B) who have both read and are discussing the provided text.
The discussion should remain professional yet conversational, and stay
strictly grounded in the content of the text. The discussion should
explore the core themes, clarify important ideas, and reflect on
implications.

Title: {title}
Context: {context}
)SPA_TPL";
const char *const kDiscussionsBase = R"SPA_TPL(Generate a natural, in-depth discussion between two readers (Person A and
Person B) who have both read and are discussing the provided text. The
discussion should remain professional yet conversational, and stay strictly
grounded in the content of the text. The discussion should explore the core
themes, clarify important ideas, and reflect on implications. Avoid general
background knowledge or any unmentioned facts.

Text:
{title}
{context}

Peer Discussions:
)SPA_TPL";
const char *const kTeacherStyleInstruct = R"SPA_TPL(System:
You are an assistant that explains a text as a teacher guiding students
to understand it deeply.

User:
Assume the role of a knowledgeable teacher explaining the article to
students who are encountering this text for the first time. Guide the
students step by step through the text and connect different parts of
the text into a coherent understanding. Use clear, instructional
language and explicitly mention relevant entities when they are
introduced.

Title: {title}
Context: {context}
)SPA_TPL";
const char *const kTeacherStyleBase = R"SPA_TPL(Explain the following text as a teacher guiding students to understand it
deeply. Assume the role of a knowledgeable teacher explaining the article
to students who are encountering this text for the first time. Guide the
students step by step through the text and connect different parts of the
text into a coherent understanding. Use clear, instructional language and
explicitly mention relevant entities when they are introduced. Avoid general
background knowledge or any unmentioned facts.

Text:
{title}
{context}

Teacher's explanations:
)SPA_TPL";

} // namespace spa::detail
