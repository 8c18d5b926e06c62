#include "spa/pos_tagger_data.hpp"

namespace spa::detail {

// Embedded tagged corpus for the bundled tagger: one sentence per line,
// word_TAG tokens, Penn-Treebank tags. Small general-English sample chosen to
// cover the frequent open- and closed-class patterns.
const char *const kTaggedCorpus = R"TAGGED(
A_DT cat_NN sleeps_VBZ on_IN the_DT mat_NN ._.
The_DT children_NNS play_VBP in_IN the_DT park_NN ._.
She_PRP quickly_RB reads_VBZ a_DT long_JJ book_NN ._.
He_PRP walked_VBD to_TO the_DT old_JJ station_NN ._.
Dogs_NNS bark_VBP loudly_RB at_IN night_NN ._.
The_DT small_JJ bird_NN sings_VBZ a_DT sweet_JJ song_NN ._.
We_PRP are_VBP studying_VBG the_DT new_JJ method_NN ._.
They_PRP have_VBP finished_VBN the_DT difficult_JJ project_NN ._.
John_NNP visited_VBD London_NNP in_IN 1990_CD ._.
Mary_NNP and_CC Tom_NNP drive_VBP red_JJ cars_NNS ._.
The_DT company_NN announced_VBD a_DT major_JJ change_NN yesterday_NN ._.
Researchers_NNS developed_VBD a_DT faster_JJR algorithm_NN ._.
This_DT model_NN performs_VBZ better_JJR than_IN the_DT baseline_NN ._.
The_DT weather_NN was_VBD cold_JJ and_CC windy_JJ ._.
I_PRP will_MD explain_VB the_DT main_JJ idea_NN ._.
You_PRP should_MD review_VB these_DT notes_NNS carefully_RB ._.
The_DT river_NN flows_VBZ through_IN three_CD towns_NNS ._.
An_DT engineer_NN designs_VBZ bridges_NNS and_CC roads_NNS ._.
The_DT students_NNS asked_VBD many_JJ questions_NNS ._.
Its_PRP$ population_NN grew_VBD rapidly_RB during_IN the_DT decade_NN ._.
Paris_NNP is_VBZ the_DT capital_NN of_IN France_NNP ._.
The_DT club_NN maintains_VBZ a_DT golf_NN course_NN ._.
It_PRP is_VBZ also_RB the_DT home_NN of_IN the_DT museum_NN ._.
Farmers_NNS grow_VBP wheat_NN in_IN the_DT valley_NN ._.
The_DT team_NN won_VBD its_PRP$ first_JJ game_NN ._.
A_DT new_JJ school_NN opened_VBD near_IN the_DT river_NN ._.
He_PRP explains_VBZ the_DT theory_NN with_IN clear_JJ examples_NNS ._.
The_DT city_NN has_VBZ experienced_VBN a_DT surge_NN in_IN construction_NN ._.
Two_CD readers_NNS discuss_VBP the_DT text_NN ._.
What_WP does_VBZ the_DT evidence_NN suggest_VB ?_.
How_WRB did_VBD the_DT crisis_NN affect_VB prices_NNS ?_.
The_DT neighborhood_NN is_VBZ bounded_VBN by_IN an_DT avenue_NN ._.
Key_JJ concepts_NNS include_VBP energy_NN ,_, matter_NN and_CC motion_NN ._.
The_DT teacher_NN guides_VBZ students_NNS through_IN the_DT chapter_NN ._.
Several_JJ homes_NNS were_VBD built_VBN in_IN the_DT suburbs_NNS ._.
The_DT question_NN requires_VBZ critical_JJ thinking_NN ._.
These_DT findings_NNS imply_VBP a_DT broader_JJR trend_NN ._.
The_DT map_NN shows_VBZ relationships_NNS between_IN concepts_NNS ._.
There_EX is_VBZ a_DT country_NN club_NN in_IN the_DT area_NN ._.
Our_PRP$ analysis_NN supports_VBZ this_DT conclusion_NN ._.
The_DT author_NN argues_VBZ that_IN growth_NN will_MD continue_VB ._.
Rapid_JJ development_NN changed_VBD the_DT region_NN ._.
A_DT famous_JJ architect_NN designed_VBD the_DT course_NN ._.
The_DT lecture_NN covers_VBZ history_NN ,_, geography_NN and_CC culture_NN ._.
Prices_NNS rose_VBD sharply_RB after_IN the_DT war_NN ._.
The_DT report_NN lists_VBZ five_CD important_JJ implications_NNS ._.
Students_NNS often_RB ask_VBP why_WRB the_DT rule_NN works_VBZ ._.
The_DT discussion_NN explores_VBZ core_JJ themes_NNS ._.
Each_DT concept_NN builds_VBZ on_IN earlier_JJR ideas_NNS ._.
The_DT golf_NN club_NN hosts_VBZ a_DT yearly_JJ event_NN ._.
Heavy_JJ rain_NN delayed_VBD the_DT match_NN ._.
The_DT essay_NN examines_VBZ causes_NNS and_CC effects_NNS ._.
Scientists_NNS believe_VBP the_DT results_NNS are_VBP reliable_JJ ._.
A_DT boy_NN runs_VBZ across_IN the_DT field_NN ._.
The_DT horse_NN runs_VBZ fast_RB ._.
Old_JJ houses_NNS line_VBP the_DT street_NN ._.
The_DT historian_NN wrote_VBD a_DT detailed_JJ case_NN study_NN ._.
The_DT outline_NN covers_VBZ two_CD topics_NNS :_: history_NN and_CC culture_NN ._.
However_RB ,_, the_DT data_NNS remain_VBP incomplete_JJ ._.
In_IN addition_NN ,_, the_DT city_NN built_VBD new_JJ roads_NNS ._.
The_DT growing_VBG city_NN attracts_VBZ workers_NNS ._.
They_PRP are_VBP building_VBG new_JJ homes_NNS ._.
She_PRP is_VBZ writing_VBG a_DT report_NN about_IN farming_NN ._.
He_PRP moved_VBD to_TO a_DT small_JJ town_NN ._.
The_DT road_NN leads_VBZ to_TO the_DT coast_NN ._.
The_DT largest_JJS city_NN lies_VBZ on_IN the_DT coast_NN ._.
This_DT is_VBZ the_DT most_RBS important_JJ point_NN ._.
Berlin_NNP attracts_VBZ millions_NNS of_IN visitors_NNS ._.
The_DT Amazon_NNP River_NNP crosses_VBZ Brazil_NNP ._.
Professor_NNP Smith_NNP teaches_VBZ physics_NN at_IN Oxford_NNP ._.
The_DT plan_NN will_MD not_RB work_VB without_IN funding_NN ._.
It_PRP does_VBZ not_RB change_VB the_DT result_NN ._.
The_DT factors_NNS that_WDT drive_VBP growth_NN vary_VBP ._.
Ideas_NNS which_WDT seem_VBP simple_JJ often_RB matter_VBP ._.
The_DT bridge_NN was_VBD designed_VBN by_IN a_DT famous_JJ engineer_NN ._.
The_DT letter_NN was_VBD written_VBN in_IN French_NNP ._.
Their_PRP$ main_JJ goal_NN is_VBZ clear_JJ ._.
His_PRP$ recent_JJ work_NN focuses_VBZ on_IN climate_NN ._.
A_DT nurse_NN helps_VBZ patients_NNS every_DT day_NN ._.
The_DT committee_NN meets_VBZ on_IN Monday_NNP ._.
Local_JJ schools_NNS teach_VBP music_NN and_CC art_NN ._.
The_DT story_NN begins_VBZ in_IN a_DT quiet_JJ village_NN ._.
Workers_NNS repair_VBP the_DT bridge_NN each_DT summer_NN ._.
The_DT valley_NN produces_VBZ most_JJS of_IN the_DT fruit_NN ._.
Tourists_NNS visit_VBP the_DT castle_NN in_IN spring_NN ._.
The_DT country_NN exports_VBZ coal_NN and_CC steel_NN ._.
A_DT deep_JJ lake_NN covers_VBZ the_DT northern_JJ valley_NN ._.
The_DT bright_JJ star_NN appears_VBZ after_IN sunset_NN ._.
An_DT early_JJ train_NN leaves_VBZ the_DT busy_JJ station_NN ._.
A_DT heavy_JJ box_NN blocks_VBZ the_DT narrow_JJ door_NN ._.
The_DT quiet_JJ street_NN ends_VBZ at_IN a_DT wide_JJ square_NN ._.
The_DT results_NNS differ_VBP across_IN regions_NNS ._.
The_DT numbers_NNS grow_VBP every_DT year_NN ._.
The_DT rules_NNS apply_VBP to_TO all_DT members_NNS ._.
The_DT machine_NN prints_VBZ pages_NNS quickly_RB ._.
The_DT system_NN checks_VBZ errors_NNS twice_RB ._.
The_DT survey_NN covers_VBZ costs_NNS and_CC benefits_NNS ._.
The_DT visitors_NNS asked_VBD where_WRB the_DT gate_NN was_VBD ._.
The_DT editor_NN reads_VBZ a_DT short_JJ article_NN about_IN trade_NN ._.
A_DT small_JJ team_NN writes_VBZ a_DT new_JJ chapter_NN each_DT month_NN ._.
The_DT palace_NN was_VBD built_VBN by_IN a_DT local_JJ family_NN in_IN 1850_CD ._.
The_DT manager_NN repairs_VBZ old_JJ clocks_NNS on_IN weekends_NNS ._.
The_DT harbor_NN holds_VBZ many_JJ boats_NNS during_IN winter_NN ._.
Strong_JJ winds_NNS delay_VBP flights_NNS in_IN autumn_NN ._.
)TAGGED";

} // namespace spa::detail
