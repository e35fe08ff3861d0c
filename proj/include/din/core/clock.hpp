#pragma once

#include <string>

namespace din {

// Current UTC time as ISO-8601. Honors SOURCE_DATE_EPOCH so artifacts can be
// reproduced byte-for-byte.
std::string utc_now_iso8601();

} // namespace din
