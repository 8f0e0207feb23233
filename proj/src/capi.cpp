#include "gww.h"

#include <cstring>
#include <new>
#include <string>

#include "gwwel/driver.hpp"

struct gww_result {
  std::string json;
  int exit_code = 0;
};

namespace {
thread_local std::string g_last_error;
}

extern "C" {

int gww_run_json(const char* spec_json, gww_result** out) {
  if (out) *out = nullptr;
  if (!spec_json) {
    g_last_error = "spec_json is NULL";
    return 3;
  }
  try {
    const gww::RunResult rr = gww::run_command_text(spec_json);
    if (out) {
      auto* r = new gww_result;
      r->json = rr.report.dump(2);
      r->exit_code = rr.exit_code;
      *out = r;
    }
    g_last_error.clear();
    return rr.exit_code;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return 4;
  } catch (...) {
    g_last_error = "unknown failure";
    return 4;
  }
}

const char* gww_result_json(const gww_result* r) {
  return r ? r->json.c_str() : "";
}

int gww_result_exit_code(const gww_result* r) {
  return r ? r->exit_code : 3;
}

void gww_result_free(gww_result* r) { delete r; }

const char* gww_last_error(void) { return g_last_error.c_str(); }

int gww_kontsevich(int d, char* buf, size_t len) {
  if (d < 1 || d > 12) return -1;
  try {
    const std::string s = gww::kontsevich_N(d).get_str();
    if (buf && len > 0) {
      const size_t n = std::min(len - 1, s.size());
      std::memcpy(buf, s.data(), n);
      buf[n] = '\0';
    }
    return static_cast<int>(s.size());
  } catch (...) {
    return -1;
  }
}

const char* gww_version(void) {
  static const std::string v = gww::version_string();
  return v.c_str();
}

}  // extern "C"
