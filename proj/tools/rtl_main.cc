#include <rtl/cli.hh>

#include <iostream>

int main(int argc, char * argv[])
{
    return rtl::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
