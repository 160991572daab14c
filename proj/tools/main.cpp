#include <cstdio>

int main() {
    std::puts("corrintegro: CLI wiring pending");
    return 0;
}
