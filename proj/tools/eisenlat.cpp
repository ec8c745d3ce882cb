#include <cstdio>

int main() {
    std::puts("eisenlat: command-line interface under construction");
    return 4;
}
