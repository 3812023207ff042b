#include <iostream>

int main() {
    std::cout << "pconvex: placeholder\n";
    return 0;
}
