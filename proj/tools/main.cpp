#include <vector>

#include "trackfuse/cli.hpp"

int main(int argc, char** argv) {
  return trackfuse::run_cli({argv + 1, argv + argc});
}
