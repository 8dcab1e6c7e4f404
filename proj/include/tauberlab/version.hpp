#pragma once

#define TAUBERLAB_VERSION "0.1.0"
