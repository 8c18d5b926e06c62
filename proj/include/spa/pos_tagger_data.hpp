#pragma once

namespace spa::detail {

extern const char *const kTaggedCorpus;

} // namespace spa::detail
