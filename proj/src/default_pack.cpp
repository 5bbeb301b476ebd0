#include "entrex/content_pack.hpp"

namespace entrex::pack {

namespace {

QuizQuestion q(std::string id, std::string prompt, std::vector<std::string> options, int correct) {
    return {std::move(id), std::move(prompt), std::move(options), correct};
}

ExerciseRef classify(std::string id, std::string title, std::string taxonomy) {
    return {std::move(id), ExerciseKind::Classification, std::move(title), std::move(taxonomy)};
}

ExerciseRef order(std::string id, std::string title, std::string taxonomy) {
    return {std::move(id), ExerciseKind::Ordering, std::move(title), std::move(taxonomy)};
}

Taxonomy tax(std::string name, std::vector<std::string> categories,
             std::vector<TaxonomyItem> items = {}) {
    return {std::move(name), std::move(categories), std::move(items)};
}

Level market_and_ideas() {
    Level l;
    l.number = 1;
    l.title = "Market and Ideas";
    l.content_units = {
        {"Economic sectors",
         "Economic activity is grouped into three sectors. The primary sector extracts natural "
         "resources (farming, fishing, mining); the secondary sector transforms them into goods "
         "(manufacturing, construction); the tertiary sector provides services (retail, banking, "
         "tourism). The workforce is the population able and available to work, and the activity "
         "rate is the share of the working-age population that belongs to the workforce."},
        {"Generating ideas",
         "Creativity drives new ventures. Brainstorming collects ideas aloud in a group without "
         "criticism; brainwriting has each participant write ideas down and pass them on for "
         "others to extend; SCAMPER prompts variations of an existing product: Substitute, "
         "Combine, Adapt, Modify, Put to another use, Eliminate, Reverse."},
        {"Knowing the audience",
         "A value proposition only works if it matters to the target market. Define who will buy: "
         "age, gender, occupation, income and buying habits."},
    };
    l.quiz = {
        q("l1.q1", "Which sector does a fishing company belong to?",
          {"Primary sector", "Secondary sector", "Tertiary sector"}, 0),
        q("l1.q2", "A car assembly plant is part of which sector?",
          {"Primary sector", "Secondary sector", "Tertiary sector"}, 1),
        q("l1.q3", "Which idea-generation technique works through Substitute, Combine, Adapt, "
                   "Modify, Put to another use, Eliminate and Reverse?",
          {"Brainstorming", "Brainwriting", "SCAMPER"}, 2),
        q("l1.q4", "In which technique do participants write ideas down and pass them on for "
                   "others to build upon?",
          {"Brainwriting", "Brainstorming", "SCAMPER"}, 0),
        q("l1.q5", "The activity rate measures:",
          {"The share of the working-age population that is in the workforce",
           "The number of companies created per year",
           "The share of sales coming from services"},
          0),
        q("l1.q6", "Defining the target audience means knowing:",
          {"Who will buy the product: age, gender, job, income",
           "Only the production cost of the product",
           "The list of competitors' suppliers"},
          0),
    };
    l.exercises = {
        classify("l1.sectors", "Classify activities by economic sector", "economic_sectors"),
        classify("l1.ideas", "Match each description to its idea-generation technique",
                 "idea_generation"),
    };
    return l;
}

Level strategic_positioning() {
    Level l;
    l.number = 2;
    l.title = "Strategic Positioning";
    l.content_units = {
        {"The positioning triangle",
         "A position is chosen from three viewpoints at once: what customers expect, where "
         "competitors currently stand, and which benefits the new product or service delivers. "
         "The distinctive features a company stresses should sit where the three overlap."},
        {"Mission, vision and values",
         "The mission states what the company does today and for whom. The vision describes what "
         "it wants to become. Values are the principles that guide behaviour on the way."},
    };
    l.quiz = {
        q("l2.q1", "Which three aspects determine the distinctive features of a positioning?",
          {"Customers' expectations, competitors' current position, benefits of the new product",
           "Price, place, promotion",
           "Assets, liabilities, equity"},
          0),
        q("l2.q2", "\"To become the leading sustainable bakery in the region by 2030\" is a:",
          {"Mission statement", "Vision statement", "Values statement"}, 1),
        q("l2.q3", "\"We bake fresh bread every morning for our neighbourhood\" is a:",
          {"Mission statement", "Vision statement", "Values statement"}, 0),
        q("l2.q4", "\"Honesty, craftsmanship and respect for our customers\" is a:",
          {"Vision statement", "Mission statement", "Values statement"}, 2),
        q("l2.q5", "Ignoring the competitors' current position when positioning a product is:",
          {"A sound shortcut", "A mistake: it is one side of the positioning triangle",
           "Required by law"},
          1),
    };
    l.exercises = {
        classify("l2.triangle", "Place each finding on the positioning triangle",
                 "positioning_triangle"),
        classify("l2.statements", "Mission, vision or values?", "mission_vision_values"),
    };
    return l;
}

Level product_strategy() {
    Level l;
    l.number = 3;
    l.title = "Product Strategy";
    l.content_units = {
        {"Products and services",
         "A new offer can be a tangible product, an intangible service, or a mix of both."},
        {"Product categories",
         "Convenience products are bought often and with little effort. Shopping goods are "
         "compared on price, quality and style before purchase. Specialty goods have unique "
         "features or brand identity that buyers will make a special effort to obtain."},
        {"Four paths to an offer",
         "A company can sell something that already exists, make something that someone asks "
         "for, anticipate something someone will ask for, or make something no one asked for but "
         "that will delight buyers."},
        {"Entrepreneur profile",
         "Visit the Lift Station to fill in the entrepreneur profile questionnaire and get a "
         "self-assessment across six areas."},
    };
    l.quiz = {
        q("l3.q1", "Toothpaste bought routinely at the nearest shop is a:",
          {"Convenience product", "Shopping good", "Specialty good"}, 0),
        q("l3.q2", "A sofa compared across several stores on price and style is a:",
          {"Convenience product", "Shopping good", "Specialty good"}, 1),
        q("l3.q3", "A hand-made luxury watch that buyers travel to obtain is a:",
          {"Convenience product", "Shopping good", "Specialty good"}, 2),
        q("l3.q4", "Which is NOT one of the four paths to deciding what to sell?",
          {"Selling something that already exists",
           "Making something that someone asks for",
           "Copying a competitor's trademark"},
          2),
        q("l3.q5", "Launching a product nobody requested that turns out to delight buyers "
                   "follows which path?",
          {"Making something that no one asked for but that will give buyers great delight",
           "Anticipating something that someone will ask for",
           "Selling something that already exists"},
          0),
    };
    l.exercises = {
        classify("l3.categories", "Sort products into categories", "product_categories"),
        classify("l3.paths", "Which path is each company following?", "product_paths"),
    };
    return l;
}

Level price_strategy() {
    Level l;
    l.number = 4;
    l.title = "Price Strategy";
    l.content_units = {
        {"Before pricing",
         "Four things shape a price: the cost of production, the profit sought, demand, and the "
         "competition in the market."},
        {"Pricing strategies",
         "Penetration pricing enters low to win share; skimming starts high and comes down; "
         "competitive pricing follows rivals; bundle pricing sells items together for less; "
         "product line pricing sets steps across a range; premium pricing signals exclusivity; "
         "cost based pricing adds a margin to cost; psychological pricing uses prices such as "
         "9.99; optional pricing charges for extras on top of a base offer."},
    };
    l.quiz = {
        q("l4.q1", "Which four aspects should be considered before pricing a product?",
          {"Production cost, profit, demand and market competition",
           "Logo, slogan, colour and packaging",
           "Mission, vision, values and culture"},
          0),
        q("l4.q2", "Launching at a low price to gain market share quickly is:",
          {"Skimming pricing", "Penetration pricing", "Premium pricing"}, 1),
        q("l4.q3", "Starting with a high price for early adopters and lowering it later is:",
          {"Skimming pricing", "Bundle pricing", "Cost based pricing"}, 0),
        q("l4.q4", "Setting a price at 4.99 instead of 5.00 is an example of:",
          {"Optional pricing", "Psychological pricing", "Product line pricing"}, 1),
        q("l4.q5", "Selling a phone, case and charger together for less than the separate "
                   "prices is:",
          {"Bundle pricing", "Competitive pricing", "Penetration pricing"}, 0),
        q("l4.q6", "How many pricing strategies does this level present?",
          {"Five", "Seven", "Nine"}, 2),
    };
    l.exercises = {classify("l4.pricing", "Name the pricing strategy", "pricing")};
    return l;
}

Level distribution_strategy() {
    Level l;
    l.number = 5;
    l.title = "Distribution Strategy";
    l.content_units = {
        {"Channels",
         "A distribution channel is the route a product takes to the buyer. Direct channels sell "
         "straight to the customer; indirect channels pass through intermediaries such as "
         "wholesalers and retailers."},
        {"Coverage strategies",
         "Intensive distribution uses every available outlet and suits cheap impulse purchases. "
         "Selective distribution uses a limited number of outlets in an area. Exclusive "
         "distribution gives a single outlet per area and suits higher priced products."},
        {"Common problems",
         "Typical mistakes: refusing different channels for different products, never revisiting "
         "the distribution strategy, and lack of creativity or resistance to change."},
    };
    l.quiz = {
        q("l5.q1", "A farmer selling vegetables at their own farm shop uses a:",
          {"Direct channel", "Indirect channel"}, 0),
        q("l5.q2", "Soft drinks sold in every supermarket, kiosk and vending machine follow:",
          {"Intensive distribution", "Selective distribution", "Exclusive distribution"}, 0),
        q("l5.q3", "Household appliances sold through a limited number of outlets in a region "
                   "follow:",
          {"Intensive distribution", "Selective distribution", "Exclusive distribution"}, 1),
        q("l5.q4", "A single dealer per region for a high priced brand is:",
          {"Intensive distribution", "Selective distribution", "Exclusive distribution"}, 2),
        q("l5.q5", "Which is a common problem in distribution strategy?",
          {"Failing to periodically reconsider and update the strategy",
           "Using more than one product category",
           "Having a vision statement"},
          0),
    };
    l.exercises = {
        classify("l5.channels", "Direct or indirect?", "distribution_channels"),
        classify("l5.strategies", "Choose the distribution strategy", "distribution_strategies"),
    };
    return l;
}

Level communication_strategy() {
    Level l;
    l.number = 6;
    l.title = "Communication Strategy";
    l.content_units = {
        {"Planning communication",
         "Whether for one project or the whole organisation, a communication plan sets its "
         "objectives, audience, messages, tools and activities, resources, timescales, and how it "
         "will be evaluated and amended."},
        {"The communication cycle",
         "A sender encodes an idea into a message; the message travels to the receiver side where "
         "it is decoded and finally understood by the receiver."},
    };
    l.quiz = {
        q("l6.q1", "How many stages make up the communication cycle presented here?",
          {"Three", "Five", "Seven"}, 1),
        q("l6.q2", "Which stage comes immediately after the sender?",
          {"Message", "Encoding", "Receiver"}, 1),
        q("l6.q3", "Which stage comes immediately before the receiver?",
          {"Decoder", "Encoding", "Sender"}, 0),
        q("l6.q4", "Which of these is an element a communication strategy should establish?",
          {"Timescales", "Depreciation", "Product line pricing"}, 0),
        q("l6.q5", "Evaluation and amendment in a communication plan means:",
          {"Measuring results and adjusting the plan",
           "Translating the message into another language",
           "Choosing a distribution channel"},
          0),
    };
    l.exercises = {
        order("l6.cycle", "Put the communication cycle in order", "communication_cycle"),
        classify("l6.plan", "Which plan element is this?", "communication_plan"),
    };
    return l;
}

Level swot_analysis() {
    Level l;
    l.number = 7;
    l.title = "SWOT Analysis";
    l.content_units = {
        {"Four groups",
         "Strengths and weaknesses are internal to the company; opportunities and threats come "
         "from the external environment. The top management team should take part in the "
         "reflection."},
        {"Building the matrix",
         "Gather internal and external information first, then lay out strengths and weaknesses "
         "on one side and opportunities and threats on the other."},
    };
    l.quiz = {
        q("l7.q1", "\"Our team has ten years of experience in the sector\" is a:",
          {"Strength", "Weakness", "Opportunity", "Threat"}, 0),
        q("l7.q2", "\"A new competitor is entering the market with lower prices\" is a:",
          {"Strength", "Weakness", "Opportunity", "Threat"}, 3),
        q("l7.q3", "\"Government grants for green start-ups were just announced\" is an:",
          {"Strength", "Weakness", "Opportunity", "Threat"}, 2),
        q("l7.q4", "\"We depend on a single supplier\" is a:",
          {"Strength", "Weakness", "Opportunity", "Threat"}, 1),
        q("l7.q5", "Which SWOT elements are internal to the company?",
          {"Strengths and weaknesses", "Opportunities and threats",
           "Strengths and opportunities"},
          0),
    };
    l.exercises = {classify("l7.swot", "Place each proposition in the SWOT matrix", "swot")};
    return l;
}

Level financial_viability() {
    Level l;
    l.number = 8;
    l.title = "Financial Viability";
    l.content_units = {
        {"Viability",
         "A viability study uses forecasts to check whether the business will earn enough to pay "
         "its operating costs and debts. Its basic inputs are sales, cost of goods sold (COGS), "
         "selling, general and administrative expenses (SGA), investments and funding."},
        {"Balance sheet",
         "Assets are what the company owns; liabilities are what it owes; shareholder equity is "
         "the difference. Assets always equal liabilities plus equity."},
        {"Profit and loss",
         "Sales minus COGS gives the gross margin. Subtracting SGA gives EBITDA; subtracting "
         "depreciation and amortization gives EBIT, the operating profit. Subtracting interest "
         "gives income before taxes, and subtracting taxes gives net income."},
    };
    l.quiz = {
        q("l8.q1", "Gross margin equals:",
          {"Sales minus COGS", "Sales minus taxes", "EBIT minus interest"}, 0),
        q("l8.q2", "True or false: EBITDA = gross margin - SGA.", {"True", "False"}, 0),
        q("l8.q3", "EBIT is obtained from EBITDA by subtracting:",
          {"Interest", "Depreciation and amortization", "Taxes"}, 1),
        q("l8.q4", "Which identity always holds on a balance sheet?",
          {"Assets = liabilities + shareholder equity", "Assets = sales - COGS",
           "Equity = liabilities - assets"},
          0),
        q("l8.q5", "A bank loan appears on the balance sheet as:",
          {"An asset", "A liability", "Shareholder equity"}, 1),
        q("l8.q6", "Net income equals:",
          {"Income before taxes minus taxes", "Gross margin minus SGA", "Sales minus interest"},
          0),
    };
    l.exercises = {
        classify("l8.balance", "Asset, liability or equity?", "balance_sheet"),
        order("l8.pnl", "Order the profit and loss statement", "profit_and_loss"),
    };
    return l;
}

std::map<std::string, Taxonomy> taxonomies() {
    std::map<std::string, Taxonomy> t;
    auto add = [&](Taxonomy x) { t.emplace(x.name, std::move(x)); };

    add(tax("economic_sectors", {"Primary sector", "Secondary sector", "Tertiary sector"},
            {{"Fishing", "Primary sector"},
             {"Mining", "Primary sector"},
             {"Agriculture", "Primary sector"},
             {"Car manufacturing", "Secondary sector"},
             {"Construction", "Secondary sector"},
             {"Food processing", "Secondary sector"},
             {"Banking", "Tertiary sector"},
             {"Tourism", "Tertiary sector"},
             {"Retail", "Tertiary sector"}}));
    add(tax("idea_generation", {"Brainstorming", "Brainwriting", "SCAMPER"},
            {{"Group calls out ideas freely, criticism postponed", "Brainstorming"},
             {"Ideas are written on sheets passed around the table", "Brainwriting"},
             {"What if we combined the product with a service?", "SCAMPER"},
             {"What could we eliminate from the current design?", "SCAMPER"}}));
    add(tax("positioning_triangle",
            {"Customers' expectations", "Competitors' position", "Product benefits"},
            {{"Survey: buyers want same-day delivery", "Customers' expectations"},
             {"Clients complain that current offers are too complex", "Customers' expectations"},
             {"The market leader targets large corporations only", "Competitors' position"},
             {"Rivals all compete on lowest price", "Competitors' position"},
             {"Our app works offline", "Product benefits"},
             {"Our product halves set-up time", "Product benefits"}}));
    add(tax("mission_vision_values", {"Mission", "Vision", "Values"},
            {{"We repair bicycles quickly for city commuters", "Mission"},
             {"To be the first choice for urban mobility in the country", "Vision"},
             {"Integrity and respect for the environment", "Values"}}));
    add(tax("product_categories", {"Convenience products", "Shopping goods", "Specialty goods"},
            {{"Chewing gum", "Convenience products"},
             {"Newspaper", "Convenience products"},
             {"Toothpaste", "Convenience products"},
             {"Furniture", "Shopping goods"},
             {"Clothing", "Shopping goods"},
             {"Television set", "Shopping goods"},
             {"Luxury watch", "Specialty goods"},
             {"Designer handbag", "Specialty goods"},
             {"Sports car", "Specialty goods"}}));
    add(tax("product_paths",
            {"Selling something that already exists", "Making something that someone asks for",
             "Anticipating something that someone will ask for",
             "Making something that no one asked for but that will give buyers great delight"},
            {{"A shop reselling branded sneakers", "Selling something that already exists"},
             {"A workshop building custom furniture to order",
              "Making something that someone asks for"},
             {"A start-up preparing charging points before electric cars are common",
              "Anticipating something that someone will ask for"},
             {"The first portable music player nobody requested",
              "Making something that no one asked for but that will give buyers great delight"}}));
    add(tax("pricing",
            {"Penetration pricing", "Skimming pricing", "Competitive pricing", "Bundle pricing",
             "Product line pricing", "Premium pricing", "Cost based pricing",
             "Psychological pricing", "Optional pricing"},
            {{"Low launch price to win market share fast", "Penetration pricing"},
             {"High launch price lowered as the market matures", "Skimming pricing"},
             {"Price set in line with the main rivals", "Competitive pricing"},
             {"Several products sold together at a discount", "Bundle pricing"},
             {"Basic, standard and deluxe versions at stepped prices", "Product line pricing"},
             {"Deliberately high price to signal exclusivity", "Premium pricing"},
             {"Unit cost plus a fixed margin", "Cost based pricing"},
             {"Price ending in .99", "Psychological pricing"},
             {"Base car price plus paid extras", "Optional pricing"}}));
    add(tax("distribution_channels", {"Direct channel", "Indirect channel"},
            {{"Online shop run by the manufacturer", "Direct channel"},
             {"Farm shop selling its own produce", "Direct channel"},
             {"Goods sold through a wholesaler to retailers", "Indirect channel"},
             {"Products sold in a supermarket chain", "Indirect channel"}}));
    add(tax("distribution_strategies",
            {"Intensive distribution", "Selective distribution", "Exclusive distribution"},
            {{"Cigarettes", "Intensive distribution"},
             {"Snack food", "Intensive distribution"},
             {"Soft drinks", "Intensive distribution"},
             {"Computers", "Selective distribution"},
             {"Household appliances", "Selective distribution"},
             {"Luxury cars", "Exclusive distribution"},
             {"High-end jewellery", "Exclusive distribution"}}));
    add(tax("communication_plan",
            {"Objectives", "Audience", "Messages", "Tools and activities", "Resources",
             "Timescales", "Evaluation and amendment"},
            {{"Raise brand awareness by 20% this year", "Objectives"},
             {"Students aged 18 to 25", "Audience"},
             {"Fresh food, delivered fast", "Messages"},
             {"Social media campaign and launch event", "Tools and activities"},
             {"Budget of 5,000 and one part-time designer", "Resources"},
             {"Campaign runs from March to May", "Timescales"},
             {"Monthly review of reach and sales, plan adjusted", "Evaluation and amendment"}}));
    add(tax("communication_cycle", {"Sender", "Encoding", "Message", "Decoder", "Receiver"}));
    add(tax("swot", {"Strength", "Weakness", "Opportunity", "Threat"},
            {{"Experienced founding team", "Strength"},
             {"Patented production process", "Strength"},
             {"Loyal early customer base", "Strength"},
             {"Limited working capital", "Weakness"},
             {"Dependence on a single supplier", "Weakness"},
             {"No in-house marketing skills", "Weakness"},
             {"Growing demand for sustainable products", "Opportunity"},
             {"New public funding for start-ups", "Opportunity"},
             {"Export markets opening up", "Opportunity"},
             {"Low-cost competitor entering the market", "Threat"},
             {"Rising raw material prices", "Threat"},
             {"Stricter regulation planned", "Threat"}}));
    add(tax("balance_sheet", {"Asset", "Liability", "Shareholder equity"},
            {{"Cash", "Asset"},
             {"Inventory", "Asset"},
             {"Equipment", "Asset"},
             {"Bank loan", "Liability"},
             {"Amounts owed to suppliers", "Liability"},
             {"Share capital", "Shareholder equity"},
             {"Retained earnings", "Shareholder equity"}}));
    add(tax("profit_and_loss", {"Sales", "Gross margin", "EBITDA", "EBIT", "Income before taxes",
                                "Net income"}));
    return t;
}

std::vector<Floor> floors() {
    return {
        {FloorKind::BusinessPlan, "Business Plan Office", {}},
        {FloorKind::Recreation,
         "Recreation Floor",
         {
             {"Video: pitching your idea in two minutes", "media/videos/pitching.mp4"},
             {"Video: founders talk about their first year", "media/videos/first-year.mp4"},
             {"Leisure game: market memory", "games/market-memory/index.html"},
             {"Useful contacts when starting a business", "docs/contacts.html"},
             {"Reading: entrepreneurship essentials", "docs/reading/entrepreneurship.pdf"},
             {"Reading: marketing basics", "docs/reading/marketing.pdf"},
             {"Reading: taxes for new companies", "docs/reading/taxes.pdf"},
             {"Reading: finance for founders", "docs/reading/finance.pdf"},
         }},
        {FloorKind::LiftStation, "Lift Station", {}},
        {FloorKind::VirtualMarket, "Virtual Market", {}},
        {FloorKind::Chat, "Chat Room", {}},
        {FloorKind::TopList, "Top List", {}},
    };
}

ProfileQuestionnaire profile() {
    ProfileQuestionnaire p;
    p.areas = {"personal trades",  "achievement motivation", "attitude",
               "framework conditions", "skills", "knowledge and work experience"};
    const std::vector<std::vector<std::string>> statements = {
        {"I stay calm when things do not go as planned.",
         "I take initiative without being asked.",
         "I trust my own judgement when deciding.",
         "I persist with tasks even after setbacks."},
        {"I set myself ambitious goals.",
         "I want to be measured by my results.",
         "I keep improving work that is already good enough.",
         "Building something of my own motivates me."},
        {"I see change as an opportunity.",
         "I accept calculated risks.",
         "I am comfortable with uncertain income.",
         "I view mistakes as a way to learn."},
        {"My family would support me in starting a business.",
         "I have access to some starting capital.",
         "I can dedicate enough time to a new venture.",
         "I know people who could advise me."},
        {"I communicate my ideas convincingly.",
         "I can negotiate with suppliers and customers.",
         "I organise my time and tasks well.",
         "I can lead and motivate a team."},
        {"I understand basic accounting statements.",
         "I have worked in the sector I want to enter.",
         "I know the legal steps to create a company.",
         "I have managed a budget or a project before."},
    };
    for (std::size_t a = 0; a < p.areas.size(); ++a) {
        for (std::size_t i = 0; i < statements[a].size(); ++i) {
            p.items.push_back({"p" + std::to_string(a + 1) + "." + std::to_string(i + 1),
                               p.areas[a], statements[a][i]});
        }
    }
    return p;
}

ContentPack build() {
    ContentPack pack;
    pack.version = "1.0.0";
    pack.levels = {market_and_ideas(),       strategic_positioning(), product_strategy(),
                   price_strategy(),         distribution_strategy(), communication_strategy(),
                   swot_analysis(),          financial_viability()};
    pack.floors = floors();
    pack.taxonomies = taxonomies();
    pack.profile = profile();
    return pack;
}

}  // namespace

const ContentPack& default_pack() {
    static const ContentPack pack = build();
    return pack;
}

}  // namespace entrex::pack
