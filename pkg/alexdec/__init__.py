"""alexdec - Decompose Alexander modules of knots and build their metabelian representations."""
