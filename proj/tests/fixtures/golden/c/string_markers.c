#include <stdio.h>

/* Integrate the orbit with a fixed step.
 * TODO: switch to an adaptive scheme
 */
static const char *url = "http://example.org/*not-a-comment*/";
static const char *pat = "// still a string";
char quote = '"'; // a lone quote char
int slash = '/'; /* trailing block */

int main(void) {
    printf("%s\n", url); // print it
    // first line of a group
    // second line of a group

    // separate after blank
    return 0;
}
