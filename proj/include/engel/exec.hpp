#pragma once

namespace engel {

enum class ExecPolicy { serial, parallel };

}  // namespace engel
