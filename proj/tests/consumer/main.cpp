#include <tsgl/fixed_point.hpp>
#include <cstdio>
int main() { std::printf("%.6f\n", tsgl::class2_threshold()); }
