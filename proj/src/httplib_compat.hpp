#pragma once

// The only sanctioned include point for cpp-httplib. The OpenSSL feature
// macro changes ClientImpl's layout, so every translation unit must see the
// same setting or the program breaks at link time without a diagnostic.
#ifdef LOGICSCAN_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
