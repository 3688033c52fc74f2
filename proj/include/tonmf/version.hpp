#pragma once

#define TONMF_VERSION "0.1.0"
